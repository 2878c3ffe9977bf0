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
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ufsim {

/// Dense vertex index. Real vertices occupy [0, n), boundary vertices [n, n + b).
/// The public id of a vertex is always index + 1, so real ids are 1..n and
/// boundary ids form the disjoint range n+1..n+b.
using VertexIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

struct VertexId {
    std::uint32_t value = 0;
    friend bool operator==(VertexId, VertexId) = default;
};

inline constexpr VertexId id_of(VertexIndex v) { return VertexId{v + 1}; }
inline constexpr VertexIndex index_of(VertexId id) { return id.value - 1; }

enum class WeightMode { unweighted, weighted };

struct GraphConfig {
    int d = 3;
    int rounds = 3;
    WeightMode weight_mode = WeightMode::unweighted;
    int w_max = 2;

    static GraphConfig unweighted(int d, int rounds) { return {d, rounds, WeightMode::unweighted, 2}; }
    static GraphConfig weighted(int d, int rounds, int w_max) { return {d, rounds, WeightMode::weighted, w_max}; }

    void validate() const {
        if (d < 3 || d % 2 == 0) {
            throw std::invalid_argument("code distance must be odd and >= 3, got " + std::to_string(d));
        }
        if (rounds < 1) {
            throw std::invalid_argument("rounds must be >= 1, got " + std::to_string(rounds));
        }
        if (weight_mode == WeightMode::weighted && w_max < 2) {
            throw std::invalid_argument("w_max must be >= 2, got " + std::to_string(w_max));
        }
    }

    friend bool operator==(const GraphConfig&, const GraphConfig&) = default;
};

enum class EdgeKind : std::uint8_t { spatial, temporal, boundary };

inline const char* to_string(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::spatial: return "spatial";
        case EdgeKind::temporal: return "temporal";
        case EdgeKind::boundary: return "boundary";
    }
    return "?";
}

struct Vertex {
    int round = 0;
    // Real vertices: ancilla row (0 = bottom weight-2 row .. d = top weight-2 row) and
    // plaquette column. Boundary vertices: row/col of the dangling data qubit, with
    // col = -1 on the left side and col = d on the right side.
    int row = 0;
    int col = 0;
    bool is_boundary = false;
};

struct Edge {
    VertexIndex u = 0;  // always the lower index, i.e. the owner of the growth cell
    VertexIndex v = 0;
    EdgeKind kind = EdgeKind::spatial;
    int w = 2;
    int round = 0;       // for temporal edges, the earlier round
    int data_row = -1;   // data qubit position for spatial/boundary edges, -1 for temporal
    int data_col = -1;
};

/// 3-D decoding graph of the rotated surface code (Z-ancilla side), with one
/// virtual boundary vertex per dangling data-qubit edge. Immutable once built.
class DecodingGraph {
   public:
    DecodingGraph() = default;

    const GraphConfig& config() const { return config_; }
    std::size_t num_real() const { return num_real_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_boundary() const { return vertices_.size() - num_real_; }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t per_round() const { return per_round_; }

    bool is_boundary(VertexIndex v) const { return v >= num_real_; }
    const Vertex& vertex(VertexIndex v) const { return vertices_[v]; }
    const Edge& edge(EdgeIndex e) const { return edges_[e]; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Incident edges of v, ascending edge index.
    std::span<const EdgeIndex> incident(VertexIndex v) const {
        return {inc_edges_.data() + offsets_[v], inc_edges_.data() + offsets_[v + 1]};
    }
    /// Adjacent vertices of v, parallel to incident(v).
    std::span<const VertexIndex> adjacent(VertexIndex v) const {
        return {inc_nbrs_.data() + offsets_[v], inc_nbrs_.data() + offsets_[v + 1]};
    }
    std::size_t degree(VertexIndex v) const { return offsets_[v + 1] - offsets_[v]; }

    VertexIndex other(EdgeIndex e, VertexIndex v) const {
        const Edge& ed = edges_[e];
        return ed.u == v ? ed.v : ed.u;
    }

    // Id-based queries; these validate their arguments.
    std::span<const EdgeIndex> incident_edges(VertexId id) const { return incident(checked(id)); }
    std::span<const VertexIndex> adjacent_vertices(VertexId id) const { return adjacent(checked(id)); }
    VertexId other_endpoint(EdgeIndex e, VertexId id) const {
        if (e >= edges_.size()) {
            throw std::out_of_range("unknown edge index " + std::to_string(e));
        }
        VertexIndex v = checked(id);
        const Edge& ed = edges_[e];
        if (ed.u != v && ed.v != v) {
            throw std::invalid_argument("vertex " + std::to_string(id.value) + " is not an endpoint of edge " +
                                        std::to_string(e));
        }
        return id_of(other(e, v));
    }

    /// Boundary edges on the left side (data column 0), ascending edge index.
    const std::vector<EdgeIndex>& logical_cut() const { return logical_cut_; }

    int total_weight() const {
        int s = 0;
        for (const Edge& e : edges_) s += e.w;
        return s;
    }

    /// Copy of this graph with per-edge weights replaced.
    DecodingGraph with_weights(std::span<const int> weights) const {
        if (weights.size() != edges_.size()) {
            throw std::invalid_argument("weight table size does not match edge count");
        }
        int hi = config_.weight_mode == WeightMode::weighted ? config_.w_max : 2;
        DecodingGraph g = *this;
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            if (weights[i] < 2 || weights[i] > hi) {
                throw std::invalid_argument("edge weight " + std::to_string(weights[i]) + " outside [2, " +
                                            std::to_string(hi) + "]");
            }
            g.edges_[i].w = weights[i];
        }
        return g;
    }

    friend DecodingGraph build_decoding_graph(const GraphConfig& config);

   private:
    VertexIndex checked(VertexId id) const {
        if (id.value == 0 || id.value > vertices_.size()) {
            throw std::out_of_range("unknown vertex id " + std::to_string(id.value));
        }
        return index_of(id);
    }

    GraphConfig config_;
    std::size_t num_real_ = 0;
    std::size_t per_round_ = 0;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> offsets_;
    std::vector<EdgeIndex> inc_edges_;
    std::vector<VertexIndex> inc_nbrs_;
    std::vector<EdgeIndex> logical_cut_;
};

/// Builds the decoding graph. Z plaquettes sit at (pr, pc), pr in [-1, d-1],
/// pc in [0, d-2], with (pr + pc) even; plaquette (pr, pc) touches data qubits
/// (pr, pc), (pr, pc+1), (pr+1, pc), (pr+1, pc+1) that lie inside the d x d grid.
/// Ids run row-major from the bottom-left ancilla, round by round.
inline DecodingGraph build_decoding_graph(const GraphConfig& config) {
    config.validate();
    const int d = config.d;
    const int half = (d - 1) / 2;
    DecodingGraph g;
    g.config_ = config;
    g.per_round_ = static_cast<std::size_t>((d + 1) * half);
    g.num_real_ = g.per_round_ * static_cast<std::size_t>(config.rounds);

    auto ancilla = [&](int round, int pr, int pc) -> VertexIndex {
        return static_cast<VertexIndex>(static_cast<std::size_t>(round) * g.per_round_ +
                                        static_cast<std::size_t>((pr + 1) * half + pc / 2));
    };

    g.vertices_.resize(g.num_real_);
    for (int t = 0; t < config.rounds; ++t) {
        for (int pr = -1; pr <= d - 1; ++pr) {
            for (int pc = 0; pc <= d - 2; ++pc) {
                if (((pr + pc) & 1) != 0) continue;
                g.vertices_[ancilla(t, pr, pc)] = Vertex{t, pr + 1, pc, false};
            }
        }
    }

    // Boundary vertices are appended in creation order, after all real vertices.
    std::vector<Vertex> boundary;
    for (int t = 0; t < config.rounds; ++t) {
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                VertexIndex ends[2];
                int n_ends = 0;
                const bool even = ((r + c) & 1) == 0;
                const int cand[2][2] = {{r - 1, even ? c - 1 : c}, {r, even ? c : c - 1}};
                for (const auto& pq : cand) {
                    if (pq[1] >= 0 && pq[1] <= d - 2) ends[n_ends++] = ancilla(t, pq[0], pq[1]);
                }
                Edge e;
                e.round = t;
                e.data_row = r;
                e.data_col = c;
                if (n_ends == 2) {
                    e.kind = EdgeKind::spatial;
                    e.u = std::min(ends[0], ends[1]);
                    e.v = std::max(ends[0], ends[1]);
                } else {
                    e.kind = EdgeKind::boundary;
                    e.u = ends[0];
                    e.v = static_cast<VertexIndex>(g.num_real_ + boundary.size());
                    boundary.push_back(Vertex{t, r, c == 0 ? -1 : d, true});
                    if (c == 0) g.logical_cut_.push_back(static_cast<EdgeIndex>(g.edges_.size()));
                }
                g.edges_.push_back(e);
            }
        }
        if (t + 1 < config.rounds) {
            for (std::size_t k = 0; k < g.per_round_; ++k) {
                Edge e;
                e.kind = EdgeKind::temporal;
                e.round = t;
                e.u = static_cast<VertexIndex>(static_cast<std::size_t>(t) * g.per_round_ + k);
                e.v = static_cast<VertexIndex>(e.u + g.per_round_);
                g.edges_.push_back(e);
            }
        }
    }
    g.vertices_.insert(g.vertices_.end(), boundary.begin(), boundary.end());

    // CSR incidence; edges are visited in index order so each list is ascending.
    const std::size_t nv = g.vertices_.size();
    g.offsets_.assign(nv + 1, 0);
    for (const Edge& e : g.edges_) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < nv; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.inc_edges_.resize(g.offsets_[nv]);
    g.inc_nbrs_.resize(g.offsets_[nv]);
    std::vector<std::uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (EdgeIndex ei = 0; ei < g.edges_.size(); ++ei) {
        const Edge& e = g.edges_[ei];
        g.inc_edges_[fill[e.u]] = ei;
        g.inc_nbrs_[fill[e.u]++] = e.v;
        g.inc_edges_[fill[e.v]] = ei;
        g.inc_nbrs_[fill[e.v]++] = e.u;
    }
    return g;
}

/// Maps per-edge error probabilities to integer weights in [2, w_max]:
/// the most likely edge gets 2, the least likely gets w_max, linear in -log p.
/// A degenerate table (all p equal) maps every edge to 2.
inline std::vector<int> quantize_weights(std::span<const double> probabilities, int w_max) {
    if (w_max < 2) throw std::invalid_argument("w_max must be >= 2");
    std::vector<int> w(probabilities.size(), 2);
    if (probabilities.empty()) return w;
    auto [lo_it, hi_it] = std::minmax_element(probabilities.begin(), probabilities.end());
    const double log_min = std::log(*lo_it);
    const double log_max = std::log(*hi_it);
    const double span = log_max - log_min;
    if (!(span > 0.0)) return w;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        double x = 2.0 + (w_max - 2) * (log_max - std::log(probabilities[i])) / span;
        w[i] = std::clamp(static_cast<int>(std::lround(x)), 2, w_max);
    }
    return w;
}

}  // namespace ufsim
