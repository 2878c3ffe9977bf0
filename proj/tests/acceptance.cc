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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ufsim/ufsim.hpp"

namespace {

using namespace ufsim;

struct Verdict {
    bool pass = false;
    std::string detail;
};

ExperimentConfig config(int d, double p, Mode mode, long trials, std::uint64_t seed) {
    ExperimentConfig c;
    c.d = d;
    c.p = p;
    c.mode = mode;
    c.trials = trials;
    c.seed = seed;
    c.abort_on_violation = false;
    return c;
}

std::string fmt(const char* f, double x) { return format_double(f, x); }

// 1. serial, staged and sync agree on partitions and iteration counts.
Verdict equivalence() {
    long mismatches = 0, bad = 0, total = 0;
    for (int d : {3, 5, 7, 9}) {
        for (double p : {0.001, 0.005, 0.02}) {
            auto s = run_experiment(config(d, p, Mode::verify, 10'000, 1000 + d));
            mismatches += s.mismatches;
            bad += s.annihilation_failures;
            total += s.trials;
        }
    }
    return {mismatches == 0 && bad == 0, std::to_string(total) + " trials, " + std::to_string(mismatches) +
                                             " mismatches, " + std::to_string(bad) + " annihilation failures"};
}

// 2. every pattern of at most two flipped edges on d=3, two rounds.
Verdict exhaustive() {
    auto g = build_decoding_graph(GraphConfig::unweighted(3, 2));
    const auto n = static_cast<EdgeIndex>(g.num_edges());
    std::vector<ErrorPattern> patterns{ErrorPattern{}};
    for (EdgeIndex a = 0; a < n; ++a) {
        patterns.push_back(ErrorPattern{{a}});
        for (EdgeIndex b = a + 1; b < n; ++b) patterns.push_back(ErrorPattern{{a, b}});
    }
    long failures = 0;
    for (const auto& err : patterns) {
        auto syn = syndrome_from_errors(g, err);
        auto serial = decode_serial(g, syn);
        bool ok = check_annihilation(g, err, serial.correction);
        for (Sweep sweep : {Sweep::active, Sweep::full}) {
            SyncOptions opts;
            opts.sweep = sweep;
            auto sync = run_synchronous(g, syn, opts);
            ok = ok && sync.partition == serial.partition && sync.growth_iterations == serial.growth_iterations &&
                 check_annihilation(g, err, peel(g, sync.forest, syn));
        }
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            auto staged = run_staged(g, syn, seed);
            ok = ok && staged.partition == serial.partition &&
                 staged.growth_iterations == serial.growth_iterations &&
                 check_annihilation(g, err, peel(g, staged.forest, syn));
        }
        failures += ok ? 0 : 1;
    }
    return {failures == 0, std::to_string(patterns.size()) + " patterns, " + std::to_string(failures) + " failures"};
}

// 3. cycles per round strictly decreasing in d.
Verdict scaling() {
    std::vector<double> per_round;
    std::string detail = "cycles/round:";
    for (int d : {5, 9, 13, 17, 21}) {
        auto s = run_experiment(config(d, 0.001, Mode::sync, 10'000, 3000 + d));
        per_round.push_back(s.mean_cycles / s.config.effective_rounds());
        detail += " d" + std::to_string(d) + "=" + fmt("%.4f", per_round.back());
    }
    bool ok = true;
    for (std::size_t i = 1; i < per_round.size(); ++i) ok = ok && per_round[i] < per_round[i - 1];
    return {ok, detail};
}

// 4. at least 85% of trials need two or fewer growth iterations.
Verdict iterations() {
    auto s = run_experiment(config(13, 0.001, Mode::sync, 10'000, 4000));
    double f = s.fraction_iterations_at_most(2);
    return {f >= 0.85 && f <= 1.0, "fraction with <= 2 iterations = " + fmt("%.4f", f) + " (need [0.85, 1.0])"};
}

// 5. mean cycles strictly increasing in p.
Verdict noise_sensitivity() {
    std::vector<double> means;
    std::string detail = "mean cycles:";
    for (double p : {0.0005, 0.001, 0.002}) {
        auto s = run_experiment(config(13, p, Mode::sync, 10'000, 5000));
        means.push_back(s.mean_cycles);
        detail += " p" + fmt("%g", p) + "=" + fmt("%.3f", s.mean_cycles);
    }
    return {means[0] < means[1] && means[1] < means[2], detail};
}

// 6. weighted mode: mean cycles nondecreasing in w_max.
Verdict weighted() {
    std::vector<double> means;
    std::string detail = "mean cycles:";
    for (int w : {2, 4, 8, 16}) {
        auto c = config(13, 0.001, Mode::sync, 10'000, 6000);
        c.weighted = WeightedNoise{0.001, 0.0005, w};
        auto s = run_experiment(c);
        means.push_back(s.mean_cycles);
        detail += " wmax" + std::to_string(w) + "=" + fmt("%.3f", s.mean_cycles);
    }
    bool ok = true;
    for (std::size_t i = 1; i < means.size(); ++i) ok = ok && means[i] >= means[i - 1];
    return {ok, detail};
}

// 7. logical rate falls with d at p=0.005; d=3 / d=7 crossover in [0.015, 0.04].
Verdict quality() {
    std::vector<double> rates;
    std::string detail = "p=0.005 rates:";
    for (int d : {3, 5, 7}) {
        auto s = run_experiment(config(d, 0.005, Mode::sync, 100'000, 7000 + d));
        rates.push_back(s.logical_rate());
        detail += " d" + std::to_string(d) + "=" + fmt("%.5f", s.logical_rate());
    }
    bool ok = rates[0] > rates[1] && rates[1] > rates[2];

    double crossing = -1.0;
    double prev_p = 0.0, prev_gap = 0.0;
    for (int k = 0; k <= 12; ++k) {
        const double p = 0.01 + 0.0025 * k;
        auto r3 = run_experiment(config(3, p, Mode::sync, 20'000, 7100 + k)).logical_rate();
        auto r7 = run_experiment(config(7, p, Mode::sync, 20'000, 7200 + k)).logical_rate();
        const double gap = r7 - r3;
        if (gap >= 0.0) {
            crossing = k == 0 ? p : prev_p + (p - prev_p) * (-prev_gap) / (gap - prev_gap);
            break;
        }
        prev_p = p;
        prev_gap = gap;
    }
    detail += "; d3/d7 crossover p=" + (crossing < 0 ? std::string("none") : fmt("%.4f", crossing)) +
              " (need [0.015, 0.04])";
    ok = ok && crossing >= 0.015 && crossing <= 0.04;
    return {ok, detail};
}

// 8. zero noise is trivial; reports do not depend on the worker count.
Verdict trivial() {
    bool ok = true;
    std::string detail;
    for (Mode m : {Mode::serial, Mode::staged, Mode::sync, Mode::verify}) {
        for (int d : {3, 5, 9}) {
            auto s = run_experiment(config(d, 0.0, m, 1000, 8000));
            ok = ok && s.mean_defects == 0.0 && s.logical_failures == 0 && s.iteration_histogram.size() == 1 &&
                 s.iteration_histogram.begin()->first == 0 && s.cycle_histogram.size() == 1;
            if (m == Mode::sync) ok = ok && s.cycle_histogram.begin()->first == 4;
        }
    }
    detail = "p=0 " + std::string(ok ? "trivial" : "NOT trivial") + " (sync handshake = 4 cycles)";
    auto report = [](int workers) {
        std::vector<ExperimentConfig> cs{config(5, 0.01, Mode::verify, 4000, 8100),
                                         config(7, 0.005, Mode::staged, 4000, 8100)};
        cs.push_back(config(9, 0.001, Mode::sync, 4000, 8100));
        cs.back().weighted = WeightedNoise{0.001, 0.0005, 8};
        for (auto& c : cs) c.workers = workers;
        auto rows = sweep(cs);
        std::ostringstream os;
        write_csv(os, rows);
        write_json(os, rows);
        return os.str();
    };
    bool same = report(1) == report(4);
    ok = ok && same;
    detail += "; 1 vs 4 workers " + std::string(same ? "byte-identical" : "DIFFER");
    return {ok, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"equivalence of serial/staged/sync decoders", equivalence},
        {"exhaustive d=3 oracle", exhaustive},
        {"sub-linear cycles per round", scaling},
        {"growth-iteration distribution", iterations},
        {"noise sensitivity", noise_sensitivity},
        {"weighted decoding latency", weighted},
        {"decoder quality", quality},
        {"trivial cases and determinism", trivial},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu [%s]: %s - %s (%.1fs)\n", i + 1, criteria[i].first, v.pass ? "PASS" : "FAIL",
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
