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
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufsim/surface_graph.hpp"

namespace ufsim {

/// Flipped edges of one shot, ascending.
struct ErrorPattern {
    std::vector<EdgeIndex> flipped;
    friend bool operator==(const ErrorPattern&, const ErrorPattern&) = default;
};

/// Defect vertices of one shot (real vertex indices), ascending.
struct Syndrome {
    std::vector<VertexIndex> defects;
    friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed of the independent stream for one trial; depends only on (master, trial).
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(trial + 0x632BE59BD9B4E019ull));
}

using Rng = std::mt19937_64;

/// I.i.d. flips with probability p on every edge. Uses geometric gap sampling,
/// so the cost is proportional to the number of flips rather than |E|.
inline ErrorPattern sample_errors(const DecodingGraph& graph, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("error probability must lie in [0, 1], got " + std::to_string(p));
    }
    ErrorPattern out;
    const std::size_t n = graph.num_edges();
    if (p == 0.0) return out;
    if (p == 1.0) {
        out.flipped.resize(n);
        for (std::size_t i = 0; i < n; ++i) out.flipped[i] = static_cast<EdgeIndex>(i);
        return out;
    }
    std::geometric_distribution<std::uint64_t> gap(p);
    std::uint64_t pos = gap(rng);
    while (pos < n) {
        out.flipped.push_back(static_cast<EdgeIndex>(pos));
        pos += 1 + gap(rng);
    }
    return out;
}

inline ErrorPattern sample_errors(const DecodingGraph& graph, double p, std::uint64_t seed) {
    Rng rng(seed);
    return sample_errors(graph, p, rng);
}

/// Independent flips with a per-edge probability table.
inline ErrorPattern sample_errors(const DecodingGraph& graph, std::span<const double> probabilities, Rng& rng) {
    if (probabilities.size() != graph.num_edges()) {
        throw std::invalid_argument("probability table size does not match edge count");
    }
    ErrorPattern out;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (unif(rng) < probabilities[i]) out.flipped.push_back(static_cast<EdgeIndex>(i));
    }
    return out;
}

/// Real vertices with an odd number of incident flipped edges; boundary
/// vertices absorb their parity.
inline Syndrome syndrome_from_errors(const DecodingGraph& graph, const ErrorPattern& errors) {
    std::vector<std::uint8_t> parity(graph.num_vertices(), 0);
    for (EdgeIndex e : errors.flipped) {
        if (e >= graph.num_edges()) {
            throw std::out_of_range("error pattern references unknown edge " + std::to_string(e));
        }
        parity[graph.edge(e).u] ^= 1;
        parity[graph.edge(e).v] ^= 1;
    }
    Syndrome s;
    for (VertexIndex v = 0; v < graph.num_real(); ++v) {
        if (parity[v]) s.defects.push_back(v);
    }
    return s;
}

/// Per-edge probabilities drawn from normal(mean, stddev), redrawn until they
/// fall inside (0, 0.5).
inline std::vector<double> sample_weighted_probabilities(const DecodingGraph& graph, double mean, double stddev,
                                                         std::uint64_t seed) {
    if (!(mean > 0.0 && mean < 0.5)) throw std::invalid_argument("mean must lie in (0, 0.5)");
    if (!(stddev >= 0.0)) throw std::invalid_argument("stddev must be >= 0");
    std::vector<double> p(graph.num_edges(), mean);
    if (stddev == 0.0) return p;
    Rng rng(seed);
    std::normal_distribution<double> dist(mean, stddev);
    for (double& x : p) {
        do {
            x = dist(rng);
        } while (!(x > 0.0 && x < 0.5));
    }
    return p;
}

}  // namespace ufsim
