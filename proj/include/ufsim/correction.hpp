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

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufsim/noise_model.hpp"
#include "ufsim/surface_graph.hpp"

namespace ufsim {

struct CorrectionPattern {
    std::vector<EdgeIndex> edges;  // ascending
    friend bool operator==(const CorrectionPattern&, const CorrectionPattern&) = default;
};

/// Rooted spanning forest over all graph vertices. Boundary roots absorb parity.
struct Forest {
    static constexpr std::int32_t kRoot = -1;
    std::vector<std::int32_t> parent;     // parent vertex index, kRoot for roots
    std::vector<EdgeIndex> parent_edge;   // meaningful where parent != kRoot

    explicit Forest(std::size_t n = 0) : parent(n, kRoot), parent_edge(n, 0) {}
};

struct ShotOutcome {
    bool annihilated = false;
    bool logical_failure = false;
    std::vector<EdgeIndex> residual;  // error xor correction, ascending
};

/// Peels the forest leaves-first, highest vertex id first: a vertex still holding
/// a defect flag adds its parent edge to the correction and passes the flag up.
/// Throws if a non-boundary root ends with a flag (an odd cluster) or if the
/// parent pointers contain a cycle.
inline CorrectionPattern peel(const DecodingGraph& graph, const Forest& forest, const Syndrome& syndrome) {
    const std::size_t n = graph.num_vertices();
    if (forest.parent.size() != n || forest.parent_edge.size() != n) {
        throw std::invalid_argument("forest size does not match graph");
    }
    std::vector<std::uint8_t> pending(n, 0);
    for (VertexIndex v : syndrome.defects) pending[v] ^= 1;

    std::vector<std::uint32_t> children(n, 0);
    std::size_t non_roots = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (forest.parent[v] != Forest::kRoot) {
            ++children[static_cast<std::size_t>(forest.parent[v])];
            ++non_roots;
        }
    }
    std::priority_queue<VertexIndex> leaves;
    for (std::size_t v = 0; v < n; ++v) {
        if (forest.parent[v] != Forest::kRoot && children[v] == 0) leaves.push(static_cast<VertexIndex>(v));
    }

    CorrectionPattern out;
    std::size_t processed = 0;
    while (!leaves.empty()) {
        VertexIndex v = leaves.top();
        leaves.pop();
        ++processed;
        auto p = static_cast<VertexIndex>(forest.parent[v]);
        if (pending[v]) {
            out.edges.push_back(forest.parent_edge[v]);
            pending[v] = 0;
            pending[p] ^= 1;
        }
        if (--children[p] == 0 && forest.parent[p] != Forest::kRoot) leaves.push(p);
    }
    if (processed != non_roots) {
        throw std::logic_error("parent forest contains a cycle");
    }
    for (std::size_t v = 0; v < graph.num_real(); ++v) {
        if (forest.parent[v] == Forest::kRoot && pending[v]) {
            throw std::logic_error("odd defect count in cluster rooted at vertex " +
                                   std::to_string(id_of(static_cast<VertexIndex>(v)).value));
        }
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

/// Breadth-first spanning forest of the fully-grown subgraph. All boundary
/// vertices act as one lumped root that is expanded first; every other cluster
/// is rooted at its minimum-id vertex. Ties break by ascending edge index.
inline Forest spanning_forest(const DecodingGraph& graph, const std::vector<std::uint8_t>& fully_grown) {
    const std::size_t n = graph.num_vertices();
    Forest f(n);
    std::vector<std::uint8_t> seen(n, 0);
    std::deque<VertexIndex> queue;

    std::vector<EdgeIndex> boundary_edges;
    for (VertexIndex b = static_cast<VertexIndex>(graph.num_real()); b < n; ++b) {
        seen[b] = 1;
        for (EdgeIndex e : graph.incident(b)) {
            if (fully_grown[e]) boundary_edges.push_back(e);
        }
    }
    std::sort(boundary_edges.begin(), boundary_edges.end());
    for (EdgeIndex e : boundary_edges) {
        const Edge& ed = graph.edge(e);
        VertexIndex b = graph.is_boundary(ed.u) ? ed.u : ed.v;
        VertexIndex r = graph.other(e, b);
        if (seen[r]) continue;
        seen[r] = 1;
        f.parent[r] = static_cast<std::int32_t>(b);
        f.parent_edge[r] = e;
        queue.push_back(r);
    }

    auto bfs = [&]() {
        while (!queue.empty()) {
            VertexIndex v = queue.front();
            queue.pop_front();
            auto inc = graph.incident(v);
            auto adj = graph.adjacent(v);
            for (std::size_t k = 0; k < inc.size(); ++k) {
                if (!fully_grown[inc[k]] || seen[adj[k]]) continue;
                seen[adj[k]] = 1;
                f.parent[adj[k]] = static_cast<std::int32_t>(v);
                f.parent_edge[adj[k]] = inc[k];
                queue.push_back(adj[k]);
            }
        }
    };
    bfs();
    for (VertexIndex v = 0; v < graph.num_real(); ++v) {
        if (seen[v]) continue;
        seen[v] = 1;
        queue.push_back(v);
        bfs();
    }
    return f;
}

inline std::vector<EdgeIndex> symmetric_difference(const std::vector<EdgeIndex>& a, const std::vector<EdgeIndex>& b) {
    std::vector<EdgeIndex> sa(a), sb(b), out;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
    return out;
}

inline bool has_even_incidence(const DecodingGraph& graph, const std::vector<EdgeIndex>& edges) {
    std::vector<std::uint8_t> parity(graph.num_vertices(), 0);
    for (EdgeIndex e : edges) {
        parity[graph.edge(e).u] ^= 1;
        parity[graph.edge(e).v] ^= 1;
    }
    for (std::size_t v = 0; v < graph.num_real(); ++v) {
        if (parity[v]) return false;
    }
    return true;
}

/// True iff error xor correction has even incidence at every real vertex.
inline bool check_annihilation(const DecodingGraph& graph, const ErrorPattern& error,
                               const CorrectionPattern& correction) {
    return has_even_incidence(graph, symmetric_difference(error.flipped, correction.edges));
}

/// Odd crossing parity of the residual across the left logical cut.
inline bool residual_crosses_cut(const DecodingGraph& graph, const std::vector<EdgeIndex>& residual) {
    const auto& cut = graph.logical_cut();
    bool odd = false;
    for (EdgeIndex e : residual) {
        if (std::binary_search(cut.begin(), cut.end(), e)) odd = !odd;
    }
    return odd;
}

inline bool check_logical_failure(const DecodingGraph& graph, const ErrorPattern& error,
                                  const CorrectionPattern& correction) {
    auto residual = symmetric_difference(error.flipped, correction.edges);
    if (!has_even_incidence(graph, residual)) {
        throw std::logic_error("logical check on a residual that does not annihilate the syndrome");
    }
    return residual_crosses_cut(graph, residual);
}

inline ShotOutcome evaluate_shot(const DecodingGraph& graph, const ErrorPattern& error,
                                 const CorrectionPattern& correction) {
    ShotOutcome out;
    out.residual = symmetric_difference(error.flipped, correction.edges);
    out.annihilated = has_even_incidence(graph, out.residual);
    out.logical_failure = out.annihilated && residual_crosses_cut(graph, out.residual);
    return out;
}

}  // namespace ufsim
