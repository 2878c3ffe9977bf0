// Copyright 2026 The ufsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <set>
#include <utility>

#include <gtest/gtest.h>

#include "ufsim/harness.hpp"
#include "ufsim/surface_graph.hpp"

namespace ufsim {
namespace {

std::size_t count_kind(const DecodingGraph& g, EdgeKind kind) {
    std::size_t n = 0;
    for (const Edge& e : g.edges()) n += e.kind == kind ? 1 : 0;
    return n;
}

TEST(SurfaceGraph, ClosedFormCounts) {
    for (int d : {3, 5, 7, 9, 11}) {
        for (int rounds : {1, d}) {
            auto g = build_decoding_graph(GraphConfig::unweighted(d, rounds));
            const std::size_t per_round = static_cast<std::size_t>((d + 1) * (d - 1) / 2);
            EXPECT_EQ(g.num_real(), per_round * rounds) << d << "/" << rounds;
            EXPECT_EQ(count_kind(g, EdgeKind::spatial), static_cast<std::size_t>(d * (d - 2) * rounds));
            EXPECT_EQ(count_kind(g, EdgeKind::boundary), static_cast<std::size_t>(2 * d * rounds));
            EXPECT_EQ(count_kind(g, EdgeKind::temporal), static_cast<std::size_t>((d * d - 1) / 2 * (rounds - 1)));
            EXPECT_EQ(g.num_boundary(), static_cast<std::size_t>(2 * d * rounds));
            EXPECT_EQ(g.logical_cut().size(), static_cast<std::size_t>(d * rounds));
        }
    }
}

TEST(SurfaceGraph, SmallExamples) {
    auto g = build_decoding_graph(GraphConfig::unweighted(5, 5));
    EXPECT_EQ(g.num_real(), 60u);
    EXPECT_EQ(g.logical_cut().size(), 25u);

    auto g3 = build_decoding_graph(GraphConfig::unweighted(3, 1));
    EXPECT_EQ(g3.num_real(), 4u);
    EXPECT_EQ(count_kind(g3, EdgeKind::spatial), 3u);
    EXPECT_EQ(count_kind(g3, EdgeKind::boundary), 6u);
    EXPECT_EQ(count_kind(g3, EdgeKind::temporal), 0u);
    EXPECT_EQ(g3.logical_cut().size(), 3u);

    auto g33 = build_decoding_graph(GraphConfig::unweighted(3, 3));
    EXPECT_EQ(g33.num_real(), 12u);
    EXPECT_EQ(count_kind(g33, EdgeKind::temporal), 8u);
}

TEST(SurfaceGraph, RejectsBadConfig) {
    EXPECT_THROW(build_decoding_graph(GraphConfig::unweighted(4, 4)), std::invalid_argument);
    EXPECT_THROW(build_decoding_graph(GraphConfig::unweighted(1, 1)), std::invalid_argument);
    EXPECT_THROW(build_decoding_graph(GraphConfig::unweighted(3, 0)), std::invalid_argument);
    EXPECT_THROW(build_decoding_graph(GraphConfig::weighted(3, 3, 1)), std::invalid_argument);
}

TEST(SurfaceGraph, IdsRowMajorFromBottomLeft) {
    auto g = build_decoding_graph(GraphConfig::unweighted(5, 2));
    for (VertexIndex v = 1; v < g.num_real(); ++v) {
        const Vertex& a = g.vertex(v - 1);
        const Vertex& b = g.vertex(v);
        auto key = [](const Vertex& x) { return std::make_tuple(x.round, x.row, x.col); };
        EXPECT_LT(key(a), key(b));
    }
    EXPECT_EQ(id_of(0).value, 1u);
    EXPECT_EQ(g.vertex(0).row, 0);
}

TEST(SurfaceGraph, CornerDegree) {
    auto g1 = build_decoding_graph(GraphConfig::unweighted(3, 1));
    auto g3 = build_decoding_graph(GraphConfig::unweighted(3, 3));
    // Vertex 1 sits on the bottom weight-2 stabilizer.
    EXPECT_EQ(g1.degree(0), 2u);
    EXPECT_EQ(g3.degree(0), 3u);
    EXPECT_EQ(g3.degree(static_cast<VertexIndex>(g3.per_round())), 4u);  // middle round: two temporal edges
}

TEST(SurfaceGraph, AdjacencyIsSymmetric) {
    auto g = build_decoding_graph(GraphConfig::unweighted(7, 7));
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        EXPECT_LT(ed.u, ed.v);
        EXPECT_FALSE(g.is_boundary(ed.u));
        auto iu = g.incident(ed.u);
        auto iv = g.incident(ed.v);
        EXPECT_NE(std::find(iu.begin(), iu.end(), e), iu.end());
        EXPECT_NE(std::find(iv.begin(), iv.end(), e), iv.end());
        EXPECT_EQ(g.other(e, ed.u), ed.v);
        EXPECT_EQ(g.other(e, ed.v), ed.u);
        if (ed.kind == EdgeKind::temporal) {
            EXPECT_EQ(g.vertex(ed.u).row, g.vertex(ed.v).row);
            EXPECT_EQ(g.vertex(ed.u).col, g.vertex(ed.v).col);
            EXPECT_EQ(g.vertex(ed.u).round + 1, g.vertex(ed.v).round);
        } else {
            EXPECT_EQ(g.vertex(ed.u).round, g.vertex(ed.v).round);
            EXPECT_EQ(g.is_boundary(ed.v), ed.kind == EdgeKind::boundary);
        }
    }
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
        auto inc = g.incident(v);
        EXPECT_TRUE(std::is_sorted(inc.begin(), inc.end()));
        if (g.is_boundary(v)) {
            ASSERT_EQ(inc.size(), 1u);
            EXPECT_EQ(g.edge(inc[0]).kind, EdgeKind::boundary);
        }
    }
}

TEST(SurfaceGraph, IdQueries) {
    auto g = build_decoding_graph(GraphConfig::unweighted(3, 2));
    const Edge& e0 = g.edge(0);
    EXPECT_EQ(g.other_endpoint(0, id_of(e0.u)), id_of(e0.v));
    EXPECT_EQ(g.other_endpoint(0, id_of(e0.v)), id_of(e0.u));
    EXPECT_EQ(g.incident_edges(VertexId{1}).size(), g.degree(0));
    EXPECT_THROW(g.incident_edges(VertexId{0}), std::out_of_range);
    EXPECT_THROW(g.adjacent_vertices(VertexId{1000}), std::out_of_range);
    EXPECT_THROW(g.other_endpoint(999, VertexId{1}), std::out_of_range);
    EXPECT_THROW(g.other_endpoint(0, VertexId{4}), std::invalid_argument);
}

TEST(SurfaceGraph, ConnectedWithMergedBoundaries) {
    for (int d : {3, 5, 9}) {
        auto g = build_decoding_graph(GraphConfig::unweighted(d, d));
        // Boundary vertices collapse onto one node per side.
        auto node = [&](VertexIndex v) -> std::size_t {
            if (!g.is_boundary(v)) return v;
            return g.num_real() + (g.vertex(v).col < 0 ? 0 : 1);
        };
        ClusterSet sets(g.num_real() + 2);
        for (const Edge& e : g.edges()) sets.unite(static_cast<ClusterSet::Element>(node(e.u)),
                                                   static_cast<ClusterSet::Element>(node(e.v)));
        for (std::size_t v = 0; v < g.num_real() + 2; ++v) EXPECT_EQ(sets.find(static_cast<ClusterSet::Element>(v)), 0u);
    }
}

TEST(SurfaceGraph, LogicalCutIsLeftBoundary) {
    auto g = build_decoding_graph(GraphConfig::unweighted(5, 3));
    for (EdgeIndex e : g.logical_cut()) {
        EXPECT_EQ(g.edge(e).kind, EdgeKind::boundary);
        EXPECT_EQ(g.edge(e).data_col, 0);
        EXPECT_EQ(g.vertex(g.edge(e).v).col, -1);
    }
}

TEST(SurfaceGraph, RebuildIsBitStable) {
    auto a = graph_to_json(build_decoding_graph(GraphConfig::unweighted(7, 4))).dump();
    auto b = graph_to_json(build_decoding_graph(GraphConfig::unweighted(7, 4))).dump();
    EXPECT_EQ(a, b);
}

TEST(SurfaceGraph, GraphJsonShape) {
    auto g = build_decoding_graph(GraphConfig::unweighted(3, 1));
    auto j = graph_to_json(g);
    EXPECT_EQ(j["config"]["d"], 3);
    EXPECT_EQ(j["vertices"].size(), g.num_vertices());
    EXPECT_EQ(j["edges"].size(), g.num_edges());
    EXPECT_EQ(j["vertices"][0]["id"], 1);
    EXPECT_EQ(j["edges"][0]["w"], 2);
}

TEST(SurfaceGraph, UnweightedEdgesHaveWeightTwo) {
    auto g = build_decoding_graph(GraphConfig::unweighted(5, 5));
    for (const Edge& e : g.edges()) EXPECT_EQ(e.w, 2);
    EXPECT_EQ(g.total_weight(), static_cast<int>(2 * g.num_edges()));
}

TEST(WeightQuantization, Endpoints) {
    std::vector<double> p{0.001, 0.01, 0.0001, 0.003};
    auto w = quantize_weights(p, 16);
    EXPECT_EQ(w[1], 2);   // most likely
    EXPECT_EQ(w[2], 16);  // least likely
    EXPECT_EQ(w[0], 9);   // halfway in log space
    for (int x : w) {
        EXPECT_GE(x, 2);
        EXPECT_LE(x, 16);
    }
}

TEST(WeightQuantization, DegenerateAndClamp) {
    std::vector<double> same(10, 0.001);
    for (int x : quantize_weights(same, 16)) EXPECT_EQ(x, 2);
    std::vector<double> spread{0.1, 0.001, 0.00001};
    for (int x : quantize_weights(spread, 2)) EXPECT_EQ(x, 2);
    EXPECT_THROW(quantize_weights(spread, 1), std::invalid_argument);
}

TEST(WeightQuantization, WithWeightsValidates) {
    auto g = build_decoding_graph(GraphConfig::weighted(3, 1, 4));
    std::vector<int> w(g.num_edges(), 3);
    EXPECT_EQ(g.with_weights(w).edge(0).w, 3);
    w[0] = 5;
    EXPECT_THROW(g.with_weights(w), std::invalid_argument);
    w[0] = 1;
    EXPECT_THROW(g.with_weights(w), std::invalid_argument);
    EXPECT_THROW(g.with_weights(std::vector<int>(2, 2)), std::invalid_argument);
}

}  // namespace
}  // namespace ufsim
