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
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ufsim/cluster_set.hpp"
#include "ufsim/correction.hpp"
#include "ufsim/noise_model.hpp"
#include "ufsim/surface_graph.hpp"

namespace ufsim {

/// Cluster label per real vertex: the minimum id in its cluster, or 0 for any
/// cluster that contains a boundary vertex.
using Partition = std::vector<std::uint32_t>;

struct SerialDecodeResult {
    Partition partition;
    std::vector<std::uint8_t> fully_grown;  // per edge
    std::vector<int> growth;                // per edge
    int growth_iterations = 0;
    CorrectionPattern correction;
};

/// Serial union-find decoder: alternating Growing and Merging passes over odd
/// clusters. Union-find element 0 stands for every boundary vertex; real vertex
/// index i is element i + 1, so set representatives equal cluster ids.
class SerialDecoder {
   public:
    SerialDecoder(const DecodingGraph& graph, const Syndrome& syndrome)
        : graph_(&graph),
          clusters_(graph.num_real() + 1),
          growth_(graph.num_edges(), 0),
          grown_(graph.num_edges(), 0) {
        clusters_.mark_boundary(0);
        for (VertexIndex v : syndrome.defects) {
            if (v >= graph.num_real()) throw std::invalid_argument("defect is not a real vertex");
            clusters_.toggle_parity(element(v));
        }
        for (VertexIndex v : syndrome.defects) {
            if (clusters_.is_odd(element(v))) odd_roots_.push_back(element(v));
        }
        std::sort(odd_roots_.begin(), odd_roots_.end());
        odd_roots_.erase(std::unique(odd_roots_.begin(), odd_roots_.end()), odd_roots_.end());
    }

    ClusterSet::Element element(VertexIndex v) const {
        return graph_->is_boundary(v) ? 0 : static_cast<ClusterSet::Element>(v + 1);
    }

    bool has_odd_cluster() const { return !odd_roots_.empty(); }
    const std::vector<ClusterSet::Element>& odd_roots() const { return odd_roots_; }
    int growth_iterations() const { return iterations_; }
    const std::vector<int>& growth() const { return growth_; }
    ClusterSet& clusters() { return clusters_; }

    /// One Growing pass. Every odd cluster adds 1 to each edge leaving it; the
    /// edges that reach their weight are returned. If `order` is given the odd
    /// clusters are visited in a shuffled order.
    std::vector<EdgeIndex> grow(Rng* order = nullptr) {
        std::vector<ClusterSet::Element> roots = odd_roots_;
        if (order) std::shuffle(roots.begin(), roots.end(), *order);
        std::vector<EdgeIndex> newly_grown;
        for (ClusterSet::Element root : roots) {
            for (ClusterSet::Element m : clusters_.members(root)) {
                if (m == 0) continue;
                VertexIndex u = m - 1;
                auto inc = graph_->incident(u);
                auto adj = graph_->adjacent(u);
                for (std::size_t k = 0; k < inc.size(); ++k) {
                    if (clusters_.find(element(adj[k])) == root) continue;
                    EdgeIndex e = inc[k];
                    if (growth_[e] < graph_->edge(e).w) {
                        if (++growth_[e] == graph_->edge(e).w) {
                            grown_[e] = 1;
                            newly_grown.push_back(e);
                        }
                    }
                }
            }
        }
        ++iterations_;
        return newly_grown;
    }

    /// Merging pass over the edges returned by grow().
    void merge(std::span<const EdgeIndex> newly_grown) {
        for (EdgeIndex e : newly_grown) {
            clusters_.unite(element(graph_->edge(e).u), element(graph_->edge(e).v));
        }
        std::vector<ClusterSet::Element> next;
        for (ClusterSet::Element r : odd_roots_) {
            ClusterSet::Element root = clusters_.find(r);
            if (clusters_.is_odd(root)) next.push_back(root);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        odd_roots_ = std::move(next);
    }

    Partition partition() {
        Partition p(graph_->num_real());
        for (VertexIndex v = 0; v < graph_->num_real(); ++v) p[v] = clusters_.find(element(v));
        return p;
    }

    const std::vector<std::uint8_t>& fully_grown() const { return grown_; }

   private:
    const DecodingGraph* graph_;
    ClusterSet clusters_;
    std::vector<int> growth_;
    std::vector<std::uint8_t> grown_;
    std::vector<ClusterSet::Element> odd_roots_;
    int iterations_ = 0;
};

struct SerialOptions {
    std::optional<std::uint64_t> shuffle_seed;  // randomize odd-cluster order per pass
    bool build_correction = true;
};

inline SerialDecodeResult decode_serial(const DecodingGraph& graph, const Syndrome& syndrome,
                                        const SerialOptions& options = {}) {
    SerialDecoder dec(graph, syndrome);
    std::optional<Rng> rng;
    if (options.shuffle_seed) rng.emplace(*options.shuffle_seed);
    while (dec.has_odd_cluster()) {
        auto f = dec.grow(rng ? &*rng : nullptr);
        dec.merge(f);
    }
    SerialDecodeResult out;
    out.partition = dec.partition();
    out.fully_grown = dec.fully_grown();
    out.growth = dec.growth();
    out.growth_iterations = dec.growth_iterations();
    if (options.build_correction) {
        out.correction = peel(graph, spanning_forest(graph, out.fully_grown), syndrome);
    }
    return out;
}

}  // namespace ufsim
