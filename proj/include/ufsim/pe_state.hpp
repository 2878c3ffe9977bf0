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

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ufsim/correction.hpp"
#include "ufsim/noise_model.hpp"
#include "ufsim/serial_uf.hpp"
#include "ufsim/surface_graph.hpp"

namespace ufsim {

/// Cluster id carried by every boundary vertex; below all real ids (1..n).
inline constexpr std::uint32_t kBoundaryCid = 0;

enum class GlobalStage : std::uint8_t { growing, merging, checking, terminate };
enum class PeStage : std::uint8_t { growing, merging, checking };

inline const char* to_string(GlobalStage s) {
    switch (s) {
        case GlobalStage::growing: return "growing";
        case GlobalStage::merging: return "merging";
        case GlobalStage::checking: return "checking";
        case GlobalStage::terminate: return "terminate";
    }
    return "?";
}

/// Register file of all PEs (structure of arrays, indexed by vertex) plus the
/// per-edge growth cells. `parent` holds a vertex index; a root points at itself.
struct PeRegisters {
    std::vector<std::uint32_t> cid;
    std::vector<VertexIndex> parent;
    std::vector<std::uint8_t> m;
    std::vector<std::uint8_t> odd;
    std::vector<std::uint8_t> codd;
    std::vector<std::uint8_t> st_odd;
    std::vector<std::uint8_t> busy;
    std::vector<int> growth;

    /// Initial state: cid = id, odd = st_odd = codd = m, parent = self, growth 0.
    /// Boundary vertices are passive: cid = kBoundaryCid, never odd, never busy.
    static PeRegisters init(const DecodingGraph& graph, const Syndrome& syndrome) {
        const std::size_t n = graph.num_vertices();
        PeRegisters r;
        r.cid.resize(n);
        r.parent.resize(n);
        r.m.assign(n, 0);
        r.busy.assign(n, 0);
        r.growth.assign(graph.num_edges(), 0);
        for (VertexIndex v = 0; v < n; ++v) {
            r.cid[v] = graph.is_boundary(v) ? kBoundaryCid : id_of(v).value;
            r.parent[v] = v;
        }
        for (VertexIndex v : syndrome.defects) {
            if (v >= graph.num_real()) throw std::invalid_argument("defect is not a real vertex");
            r.m[v] ^= 1;
        }
        r.odd = r.m;
        r.codd = r.m;
        r.st_odd = r.m;
        return r;
    }

    bool fully_grown(const DecodingGraph& graph, EdgeIndex e) const { return growth[e] >= graph.edge(e).w; }
};

struct StageCounts {
    long growing = 0;
    long merging = 0;
    long checking = 0;
};

struct DistDecodeResult {
    Partition partition;                    // cid per real vertex
    std::vector<std::uint32_t> parent_ids;  // parent id per vertex (self for roots)
    std::vector<std::uint8_t> fully_grown;  // per edge
    std::vector<int> growth;
    int growth_iterations = 0;
    long cycles = 0;  // clock cycles (synchronous) or stages executed (staged)
    StageCounts stages;
    Forest forest;
};

/// One register change. `edge` is set for growth cells (vertex_id is then the
/// owner); vertex_id 0 with field "global_stage" is the controller.
struct TraceEvent {
    long cycle = 0;
    std::uint32_t vertex_id = 0;
    std::string_view field;
    long old_value = 0;
    long new_value = 0;
    std::int64_t edge = -1;
};

using TraceFn = std::function<void(const TraceEvent&)>;

/// Formats events as `cycle,vertex_id,field,old,new`; growth cells use the
/// field name `growth:<edge index>`.
inline TraceFn csv_trace(std::ostream& out) {
    return [&out](const TraceEvent& ev) {
        out << ev.cycle << ',' << ev.vertex_id << ',' << ev.field;
        if (ev.edge >= 0) out << ':' << ev.edge;
        out << ',' << ev.old_value << ',' << ev.new_value << '\n';
    };
}

class LivenessError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Parity of m over v and its children (adjacent PEs whose parent is v).
inline bool subtree_parity(const DecodingGraph& graph, const PeRegisters& r, VertexIndex v) {
    bool p = r.m[v] != 0;
    for (VertexIndex u : graph.adjacent(v)) {
        if (r.parent[u] == v && u != v) p ^= r.st_odd[u] != 0;
    }
    return p;
}

inline DistDecodeResult collect_result(const DecodingGraph& graph, const PeRegisters& r) {
    DistDecodeResult out;
    out.partition.assign(r.cid.begin(), r.cid.begin() + static_cast<std::ptrdiff_t>(graph.num_real()));
    out.growth = r.growth;
    out.fully_grown.resize(graph.num_edges());
    for (EdgeIndex e = 0; e < graph.num_edges(); ++e) out.fully_grown[e] = r.fully_grown(graph, e) ? 1 : 0;
    out.parent_ids.resize(graph.num_vertices());
    out.forest = Forest(graph.num_vertices());
    for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
        out.parent_ids[v] = id_of(r.parent[v]).value;
        if (r.parent[v] == v) continue;
        auto inc = graph.incident(v);
        auto adj = graph.adjacent(v);
        for (std::size_t k = 0; k < inc.size(); ++k) {
            if (adj[k] == r.parent[v]) {
                out.forest.parent[v] = static_cast<std::int32_t>(r.parent[v]);
                out.forest.parent_edge[v] = inc[k];
                break;
            }
        }
        if (out.forest.parent[v] == Forest::kRoot) {
            throw std::logic_error("parent of vertex " + std::to_string(id_of(v).value) + " is not adjacent");
        }
    }
    return out;
}

}  // namespace ufsim
