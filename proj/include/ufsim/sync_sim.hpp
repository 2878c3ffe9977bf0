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
#include <vector>

#include "ufsim/pe_state.hpp"

namespace ufsim {

struct ControllerState {
    GlobalStage global_stage = GlobalStage::growing;
    int wait = 0;  // cycles left before the controller samples busy again
    long cycle = 0;
    int growth_iterations = 0;
};

/// Clock-cycle simulation of the single-clock-domain decoder. Every register
/// (PE registers, growth cells, controller) is updated once per cycle from the
/// values committed in the previous cycle.
///
/// Cycle semantics:
///  - PE stage: `growing` while the controller says so, then `merging` one cycle later.
///  - Growing: the owner (lower index) of each edge adds odd(u) + odd(v) to its
///    growth, capped at w, when the endpoints' cids differ.
///  - Merging runs every cycle: adopt the lowest cid over fully-grown neighbours
///    (ties by lowest id) and point parent at it; st_odd <- subtree parity;
///    odd <- parent's odd, or st_odd at a root. Each is a separate register.
///  - busy <- any neighbour disagrees on cid/odd, or st_odd is stale, or a root's
///    odd differs from its st_odd. codd <- odd.
///  - Controller: on `growing` switch to `merging` and wait 2 cycles; then once
///    no PE is busy, terminate if no codd is set, else issue `growing` again.
///
/// Two engines produce identical register histories: `full` evaluates every PE
/// every cycle; `active` re-evaluates only PEs whose inputs changed in the
/// previous cycle (a PE with unchanged inputs reproduces its current outputs).
enum class Sweep { active, full };

struct SyncOptions {
    long cycle_budget = 1'000'000;
    Sweep sweep = Sweep::active;
    TraceFn trace;
};

class SyncSimulator {
   public:
    using Options = SyncOptions;

    SyncSimulator(const DecodingGraph& graph, const Syndrome& syndrome, Options options = {})
        : graph_(&graph), regs_(PeRegisters::init(graph, syndrome)), options_(std::move(options)),
          mark_(graph.num_vertices(), 0) {
        for (VertexIndex v = 0; v < graph.num_real(); ++v) codd_count_ += regs_.codd[v];
        // The controller starts by issuing `growing`.
        if (codd_count_ > 0) ctrl_.growth_iterations = 1;
    }

    const PeRegisters& registers() const { return regs_; }
    const ControllerState& controller() const { return ctrl_; }
    PeStage pe_stage() const { return pe_stage_; }
    bool terminated() const { return ctrl_.global_stage == GlobalStage::terminate; }
    long busy_count() const { return busy_count_; }
    long codd_count() const { return codd_count_; }
    const StageCounts& stage_counts() const { return counts_; }

    void step() {
        if (terminated()) throw std::logic_error("step() after terminate");
        const long cycle = ++ctrl_.cycle;
        if (ctrl_.global_stage == GlobalStage::growing) {
            ++counts_.growing;
        } else {
            ++counts_.merging;
        }

        // Stage transition (registered; the growing logic below reads the old stage).
        PeStage next_stage = pe_stage_;
        if (ctrl_.global_stage == GlobalStage::growing) {
            next_stage = PeStage::growing;
        } else if (pe_stage_ == PeStage::growing) {
            next_stage = PeStage::merging;
        }

        growth_updates_.clear();
        if (pe_stage_ == PeStage::growing) compute_growth();

        vertex_updates_.clear();
        if (options_.sweep == Sweep::full) {
            for (VertexIndex v = 0; v < graph_->num_real(); ++v) evaluate(v);
        } else {
            std::sort(candidates_.begin(), candidates_.end());
            for (VertexIndex v : candidates_) evaluate(v);
        }

        ControllerState next = ctrl_;
        if (ctrl_.global_stage == GlobalStage::growing) {
            next.global_stage = GlobalStage::merging;
            next.wait = 2;
        } else if (ctrl_.wait > 0) {
            next.wait = ctrl_.wait - 1;
        } else if (busy_count_ == 0) {
            if (codd_count_ == 0) {
                next.global_stage = GlobalStage::terminate;
            } else {
                next.global_stage = GlobalStage::growing;
                ++next.growth_iterations;
            }
        }

        commit(cycle);
        pe_stage_ = next_stage;
        if (options_.trace && next.global_stage != ctrl_.global_stage) {
            options_.trace({cycle, 0, "global_stage", static_cast<long>(ctrl_.global_stage),
                            static_cast<long>(next.global_stage)});
        }
        ctrl_ = next;
        if (ctrl_.cycle >= options_.cycle_budget && !terminated()) {
            throw LivenessError("synchronous simulation exceeded cycle budget of " +
                                std::to_string(options_.cycle_budget));
        }
    }

    DistDecodeResult run() {
        while (!terminated()) step();
        return result();
    }

    DistDecodeResult result() const {
        if (!terminated()) throw std::logic_error("result requested before terminate");
        DistDecodeResult out = collect_result(*graph_, regs_);
        out.growth_iterations = ctrl_.growth_iterations;
        out.cycles = ctrl_.cycle;
        out.stages = counts_;
        return out;
    }

    /// Cluster label (final cid) of every real vertex.
    Partition partition() const {
        if (!terminated()) throw std::logic_error("partition requested before terminate");
        return Partition(regs_.cid.begin(), regs_.cid.begin() + static_cast<std::ptrdiff_t>(graph_->num_real()));
    }

   private:
    struct VertexUpdate {
        VertexIndex v;
        std::uint32_t cid;
        VertexIndex parent;
        std::uint8_t st_odd, odd, busy, codd;
    };
    struct GrowthUpdate {
        EdgeIndex e;
        int growth;
    };

    bool grown(EdgeIndex e) const { return regs_.growth[e] >= graph_->edge(e).w; }

    void compute_growth() {
        for (VertexIndex v = 0; v < graph_->num_real(); ++v) {
            if (!regs_.odd[v]) continue;
            auto inc = graph_->incident(v);
            auto adj = graph_->adjacent(v);
            for (std::size_t k = 0; k < inc.size(); ++k) {
                EdgeIndex e = inc[k];
                VertexIndex u = adj[k];
                // Each cell is written once, by its owner's grow logic.
                if (regs_.odd[u] && graph_->edge(e).u != v) continue;
                const int w = graph_->edge(e).w;
                if (regs_.growth[e] < w && regs_.cid[u] != regs_.cid[v]) {
                    int inc_by = regs_.odd[u] ? 2 : 1;
                    growth_updates_.push_back({e, std::min(regs_.growth[e] + inc_by, w)});
                }
            }
        }
        std::sort(growth_updates_.begin(), growth_updates_.end(),
                  [](const GrowthUpdate& a, const GrowthUpdate& b) { return a.e < b.e; });
    }

    void evaluate(VertexIndex v) {
        auto inc = graph_->incident(v);
        auto adj = graph_->adjacent(v);
        std::uint32_t best_cid = regs_.cid[v];
        VertexIndex best = v;
        bool disagree = false;
        bool parity = regs_.m[v] != 0;
        for (std::size_t k = 0; k < inc.size(); ++k) {
            VertexIndex u = adj[k];
            if (regs_.parent[u] == v) parity ^= regs_.st_odd[u] != 0;
            if (!grown(inc[k])) continue;
            if (regs_.cid[u] < best_cid || (regs_.cid[u] == best_cid && best != v && u < best)) {
                best_cid = regs_.cid[u];
                best = u;
            }
            disagree |= regs_.cid[u] != regs_.cid[v] || regs_.odd[u] != regs_.odd[v];
        }
        const bool is_root = regs_.parent[v] == v;
        VertexUpdate up{};
        up.v = v;
        up.cid = best_cid;
        up.parent = best == v ? regs_.parent[v] : best;
        up.st_odd = parity ? 1 : 0;
        up.odd = is_root ? regs_.st_odd[v] : regs_.odd[regs_.parent[v]];
        up.busy = (disagree || (regs_.st_odd[v] != 0) != parity || (is_root && regs_.odd[v] != regs_.st_odd[v])) ? 1 : 0;
        up.codd = regs_.odd[v];
        if (up.cid != regs_.cid[v] || up.parent != regs_.parent[v] || up.st_odd != regs_.st_odd[v] ||
            up.odd != regs_.odd[v] || up.busy != regs_.busy[v] || up.codd != regs_.codd[v]) {
            vertex_updates_.push_back(up);
        }
    }

    void touch(VertexIndex v) {
        if (graph_->is_boundary(v) || mark_[v] == stamp_) return;
        mark_[v] = stamp_;
        candidates_.push_back(v);
    }

    void emit(long cycle, VertexIndex v, std::string_view field, long old_value, long new_value) {
        if (old_value != new_value) options_.trace({cycle, id_of(v).value, field, old_value, new_value});
    }

    void commit(long cycle) {
        ++stamp_;
        candidates_.clear();
        for (const GrowthUpdate& g : growth_updates_) {
            const Edge& ed = graph_->edge(g.e);
            if (options_.trace) options_.trace({cycle, id_of(ed.u).value, "growth", regs_.growth[g.e], g.growth, g.e});
            regs_.growth[g.e] = g.growth;
            touch(ed.u);
            touch(ed.v);
        }
        for (const VertexUpdate& up : vertex_updates_) {
            const VertexIndex v = up.v;
            if (options_.trace) {
                emit(cycle, v, "cid", regs_.cid[v], up.cid);
                emit(cycle, v, "parent", id_of(regs_.parent[v]).value, id_of(up.parent).value);
                emit(cycle, v, "st_odd", regs_.st_odd[v], up.st_odd);
                emit(cycle, v, "odd", regs_.odd[v], up.odd);
                emit(cycle, v, "busy", regs_.busy[v], up.busy);
                emit(cycle, v, "codd", regs_.codd[v], up.codd);
            }
            const bool visible = up.cid != regs_.cid[v] || up.parent != regs_.parent[v] ||
                                 up.st_odd != regs_.st_odd[v] || up.odd != regs_.odd[v];
            busy_count_ += static_cast<long>(up.busy) - regs_.busy[v];
            codd_count_ += static_cast<long>(up.codd) - regs_.codd[v];
            regs_.cid[v] = up.cid;
            regs_.parent[v] = up.parent;
            regs_.st_odd[v] = up.st_odd;
            regs_.odd[v] = up.odd;
            regs_.busy[v] = up.busy;
            regs_.codd[v] = up.codd;
            if (visible) {
                touch(v);
                for (VertexIndex u : graph_->adjacent(v)) touch(u);
            }
        }
    }

    const DecodingGraph* graph_;
    PeRegisters regs_;
    Options options_;
    ControllerState ctrl_;
    PeStage pe_stage_ = PeStage::merging;
    StageCounts counts_;
    long busy_count_ = 0;
    long codd_count_ = 0;

    std::vector<GrowthUpdate> growth_updates_;
    std::vector<VertexUpdate> vertex_updates_;
    std::vector<VertexIndex> candidates_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t stamp_ = 0;
};

inline DistDecodeResult run_synchronous(const DecodingGraph& graph, const Syndrome& syndrome,
                                        SyncSimulator::Options options = {}) {
    return SyncSimulator(graph, syndrome, std::move(options)).run();
}

}  // namespace ufsim
