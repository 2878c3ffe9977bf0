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
#include <numeric>
#include <vector>

#include "ufsim/pe_state.hpp"

namespace ufsim {

/// Stage-level simulation of the distributed decoder with an asynchronous
/// controller. Within a stage, PEs run one after another in a shuffled order and
/// always read the most recently written shared state; the controller only
/// advances once every PE has finished the stage.
struct StagedOptions {
    std::uint64_t schedule_seed = 0;
    long stage_budget = 10'000'000;
    TraceFn trace;
};

class StagedSimulator {
   public:
    using Options = StagedOptions;

    StagedSimulator(const DecodingGraph& graph, const Syndrome& syndrome, Options options)
        : graph_(&graph), regs_(PeRegisters::init(graph, syndrome)), options_(std::move(options)),
          rng_(options_.schedule_seed), order_(graph.num_real()),
          stage_(graph.num_vertices(), PeStage::merging) {
        std::iota(order_.begin(), order_.end(), VertexIndex{0});
    }

    const PeRegisters& registers() const { return regs_; }
    GlobalStage global_stage() const { return global_stage_; }
    bool terminated() const { return global_stage_ == GlobalStage::terminate; }

    DistDecodeResult run() {
        while (!terminated()) run_iteration();
        DistDecodeResult out = collect_result(*graph_, regs_);
        out.growth_iterations = growth_iterations_;
        out.stages = counts_;
        out.cycles = counts_.growing + counts_.merging + counts_.checking;
        return out;
    }

    /// One pass of the controller loop: Growing, then Merging/Checking until no
    /// PE is busy, then the odd-cluster check.
    void run_iteration() {
        set_global(GlobalStage::growing);
        ++counts_.growing;
        bool any_odd = false;
        for (VertexIndex v : shuffled()) any_odd |= growing(v);
        if (any_odd) ++growth_iterations_;

        bool any_busy = false;
        do {
            set_global(GlobalStage::merging);
            ++counts_.merging;
            for (VertexIndex v : shuffled()) merging(v);
            set_global(GlobalStage::checking);
            ++counts_.checking;
            for (VertexIndex v : shuffled()) checking(v);
            any_busy = std::any_of(regs_.busy.begin(), regs_.busy.end(), [](std::uint8_t b) { return b != 0; });
            if (counts_.growing + counts_.merging + counts_.checking > options_.stage_budget) {
                throw LivenessError("staged simulation exceeded its stage budget");
            }
        } while (any_busy);

        if (std::none_of(regs_.codd.begin(), regs_.codd.end(), [](std::uint8_t c) { return c != 0; })) {
            set_global(GlobalStage::terminate);
        }
    }

   private:
    long now() const { return counts_.growing + counts_.merging + counts_.checking; }

    void set_global(GlobalStage s) {
        if (options_.trace && s != global_stage_) {
            options_.trace({now(), 0, "global_stage", static_cast<long>(global_stage_), static_cast<long>(s)});
        }
        global_stage_ = s;
    }

    const std::vector<VertexIndex>& shuffled() {
        std::shuffle(order_.begin(), order_.end(), rng_);
        return order_;
    }

    template <typename T>
    void write(VertexIndex v, std::vector<T>& reg, T value, std::string_view field) {
        if (reg[v] == value) return;
        if (options_.trace) {
            options_.trace({now(), id_of(v).value, field, static_cast<long>(reg[v]), static_cast<long>(value)});
        }
        reg[v] = value;
    }

    void write_parent(VertexIndex v, VertexIndex u) {
        if (regs_.parent[v] == u) return;
        if (options_.trace) {
            options_.trace({now(), id_of(v).value, "parent", static_cast<long>(id_of(regs_.parent[v]).value),
                            static_cast<long>(id_of(u).value)});
        }
        regs_.parent[v] = u;
    }

    // Returns whether v was odd (and therefore grew).
    bool growing(VertexIndex v) {
        stage_[v] = PeStage::growing;
        if (!regs_.odd[v]) return false;
        auto inc = graph_->incident(v);
        auto adj = graph_->adjacent(v);
        for (std::size_t k = 0; k < inc.size(); ++k) {
            EdgeIndex e = inc[k];
            if (regs_.growth[e] < graph_->edge(e).w && regs_.cid[adj[k]] != regs_.cid[v]) {
                if (options_.trace) {
                    options_.trace({now(), id_of(graph_->edge(e).u).value, "growth", regs_.growth[e],
                                    regs_.growth[e] + 1, e});
                }
                ++regs_.growth[e];
            }
        }
        return true;
    }

    void merging(VertexIndex v) {
        regs_.busy[v] = 1;
        stage_[v] = PeStage::merging;
        auto inc = graph_->incident(v);
        auto adj = graph_->adjacent(v);
        for (std::size_t k = 0; k < inc.size(); ++k) {
            if (!regs_.fully_grown(*graph_, inc[k])) continue;
            VertexIndex u = adj[k];
            if (regs_.cid[u] < regs_.cid[v]) {
                write(v, regs_.cid, regs_.cid[u], "cid");
                write_parent(v, u);
            }
        }
        write<std::uint8_t>(v, regs_.st_odd, subtree_parity(*graph_, regs_, v) ? 1 : 0, "st_odd");
        std::uint8_t odd = regs_.parent[v] == v ? regs_.st_odd[v] : regs_.odd[regs_.parent[v]];
        write(v, regs_.odd, odd, "odd");
        write(v, regs_.codd, odd, "codd");
        regs_.busy[v] = 0;
    }

    void checking(VertexIndex v) {
        bool agree = true;
        auto inc = graph_->incident(v);
        auto adj = graph_->adjacent(v);
        for (std::size_t k = 0; k < inc.size() && agree; ++k) {
            if (!regs_.fully_grown(*graph_, inc[k])) continue;
            VertexIndex u = adj[k];
            agree = regs_.cid[u] == regs_.cid[v] && regs_.odd[u] == regs_.odd[v];
        }
        bool parity_ok = (regs_.st_odd[v] != 0) == subtree_parity(*graph_, regs_, v);
        bool root_ok = regs_.parent[v] != v || regs_.odd[v] == regs_.st_odd[v];
        regs_.busy[v] = (agree && parity_ok && root_ok) ? 0 : 1;
        stage_[v] = PeStage::checking;
    }

    const DecodingGraph* graph_;
    PeRegisters regs_;
    Options options_;
    Rng rng_;
    std::vector<VertexIndex> order_;
    std::vector<PeStage> stage_;
    GlobalStage global_stage_ = GlobalStage::merging;
    StageCounts counts_;
    int growth_iterations_ = 0;
};

inline DistDecodeResult run_staged(const DecodingGraph& graph, const Syndrome& syndrome,
                                   std::uint64_t schedule_seed) {
    return StagedSimulator(graph, syndrome, {schedule_seed, 10'000'000, {}}).run();
}

}  // namespace ufsim
