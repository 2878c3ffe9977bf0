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
#include <cstdio>
#include <exception>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ufsim/cluster_set.hpp"
#include "ufsim/correction.hpp"
#include "ufsim/noise_model.hpp"
#include "ufsim/pe_state.hpp"
#include "ufsim/serial_uf.hpp"
#include "ufsim/staged_sim.hpp"
#include "ufsim/surface_graph.hpp"
#include "ufsim/sync_sim.hpp"

namespace ufsim {

enum class Mode { serial, staged, sync, verify };

inline const char* to_string(Mode m) {
    switch (m) {
        case Mode::serial: return "serial";
        case Mode::staged: return "staged";
        case Mode::sync: return "sync";
        case Mode::verify: return "verify";
    }
    return "?";
}

inline Mode parse_mode(const std::string& s) {
    if (s == "serial") return Mode::serial;
    if (s == "staged") return Mode::staged;
    if (s == "sync") return Mode::sync;
    if (s == "verify") return Mode::verify;
    throw std::invalid_argument("unknown mode '" + s + "' (expected serial, staged, sync or verify)");
}

struct WeightedNoise {
    double mean = 0.001;
    double stddev = 0.0005;
    int w_max = 16;
};

struct ExperimentConfig {
    int d = 13;
    int rounds = 0;  // 0 means d rounds
    double p = 0.001;
    std::optional<WeightedNoise> weighted;
    long trials = 10'000;
    std::uint64_t seed = 1;
    Mode mode = Mode::sync;
    double clock_ns = 10.0;
    int workers = 1;
    bool abort_on_violation = true;
    bool keep_patterns = false;  // keep flipped/defect lists in the trial records

    int effective_rounds() const { return rounds > 0 ? rounds : d; }

    void validate() const {
        if (trials < 1) throw std::invalid_argument("trials must be >= 1");
        if (workers < 1) throw std::invalid_argument("workers must be >= 1");
        if (!(clock_ns > 0.0)) throw std::invalid_argument("clock period must be positive");
        if (!weighted && !(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
        graph_config().validate();
    }

    GraphConfig graph_config() const {
        return weighted ? GraphConfig::weighted(d, effective_rounds(), weighted->w_max)
                        : GraphConfig::unweighted(d, effective_rounds());
    }
};

/// Graph (with weights applied) and per-edge probabilities shared by all trials
/// of one experiment.
struct ExperimentSetup {
    DecodingGraph graph;
    std::vector<double> probabilities;  // empty for uniform noise
};

inline std::uint64_t weight_stream_seed(std::uint64_t master_seed) { return trial_seed(master_seed, ~0ull); }
inline std::uint64_t schedule_seed_for(std::uint64_t trial_seed_value) {
    return splitmix64(trial_seed_value ^ 0xA0761D6478BD642Full);
}

inline ExperimentSetup prepare(const ExperimentConfig& config) {
    config.validate();
    ExperimentSetup s;
    s.graph = build_decoding_graph(config.graph_config());
    if (config.weighted) {
        s.probabilities = sample_weighted_probabilities(s.graph, config.weighted->mean, config.weighted->stddev,
                                                        weight_stream_seed(config.seed));
        auto w = quantize_weights(s.probabilities, config.weighted->w_max);
        s.graph = s.graph.with_weights(w);
    }
    return s;
}

inline ErrorPattern sample_trial_errors(const ExperimentSetup& setup, const ExperimentConfig& config,
                                        std::uint64_t seed) {
    Rng rng(seed);
    if (!setup.probabilities.empty()) return sample_errors(setup.graph, setup.probabilities, rng);
    return sample_errors(setup.graph, config.p, rng);
}

struct ShotResult {
    Partition partition;
    int growth_iterations = 0;
    long cycles = 0;  // sync: clock cycles; staged: stages; serial: 0
    StageCounts stages;
    std::vector<std::uint8_t> fully_grown;  // per edge
    CorrectionPattern correction;
    bool mismatch = false;
    std::string mismatch_detail;
    bool all_corrections_annihilate = true;  // verify mode checks every route's correction
};

inline std::string describe_mismatch(const char* what, const Partition& a, int ia, const Partition& b, int ib) {
    std::ostringstream os;
    os << what << ": growth_iterations " << ia << " vs " << ib;
    for (std::size_t v = 0; v < a.size(); ++v) {
        if (a[v] != b[v]) {
            os << "; first partition difference at vertex " << v + 1 << " (" << a[v] << " vs " << b[v] << ")";
            break;
        }
    }
    return os.str();
}

/// Number of connected components spanned by at least one fully-grown edge.
/// Boundary vertices count individually here.
inline std::size_t count_clusters(const DecodingGraph& graph, const std::vector<std::uint8_t>& fully_grown) {
    ClusterSet sets(graph.num_vertices());
    std::vector<std::uint8_t> touched(graph.num_vertices(), 0);
    for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
        if (!fully_grown[e]) continue;
        sets.unite(graph.edge(e).u, graph.edge(e).v);
        touched[graph.edge(e).u] = touched[graph.edge(e).v] = 1;
    }
    std::size_t n = 0;
    for (VertexIndex v = 0; v < graph.num_vertices(); ++v) n += (touched[v] && sets.find(v) == v) ? 1 : 0;
    return n;
}

/// Decodes one syndrome in the given mode. In verify mode all three decoders run;
/// cycles and correction come from the synchronous simulation.
inline ShotResult decode_shot(const DecodingGraph& graph, const Syndrome& syndrome, Mode mode,
                              std::uint64_t schedule_seed, TraceFn trace = {}) {
    ShotResult out;
    switch (mode) {
        case Mode::serial: {
            auto r = decode_serial(graph, syndrome);
            out.partition = std::move(r.partition);
            out.growth_iterations = r.growth_iterations;
            out.fully_grown = std::move(r.fully_grown);
            out.correction = std::move(r.correction);
            break;
        }
        case Mode::staged: {
            auto r = StagedSimulator(graph, syndrome, {schedule_seed, 10'000'000, std::move(trace)}).run();
            out.partition = std::move(r.partition);
            out.growth_iterations = r.growth_iterations;
            out.cycles = r.cycles;
            out.stages = r.stages;
            out.fully_grown = std::move(r.fully_grown);
            out.correction = peel(graph, r.forest, syndrome);
            break;
        }
        case Mode::sync: {
            SyncSimulator::Options opts;
            opts.trace = std::move(trace);
            auto r = run_synchronous(graph, syndrome, std::move(opts));
            out.partition = std::move(r.partition);
            out.growth_iterations = r.growth_iterations;
            out.cycles = r.cycles;
            out.stages = r.stages;
            out.fully_grown = std::move(r.fully_grown);
            out.correction = peel(graph, r.forest, syndrome);
            break;
        }
        case Mode::verify: {
            auto serial = decode_serial(graph, syndrome);
            auto staged = run_staged(graph, syndrome, schedule_seed);
            SyncSimulator::Options opts;
            opts.trace = std::move(trace);
            auto sync = run_synchronous(graph, syndrome, std::move(opts));
            if (staged.partition != serial.partition || staged.growth_iterations != serial.growth_iterations) {
                out.mismatch = true;
                out.mismatch_detail = describe_mismatch("staged vs serial", staged.partition,
                                                        staged.growth_iterations, serial.partition,
                                                        serial.growth_iterations);
            } else if (sync.partition != serial.partition || sync.growth_iterations != serial.growth_iterations) {
                out.mismatch = true;
                out.mismatch_detail = describe_mismatch("sync vs serial", sync.partition, sync.growth_iterations,
                                                        serial.partition, serial.growth_iterations);
            }
            auto staged_corr = peel(graph, staged.forest, syndrome);
            auto check = [&](const CorrectionPattern& c) {
                ErrorPattern as_error{c.edges};
                return syndrome_from_errors(graph, as_error) == syndrome;
            };
            out.all_corrections_annihilate = check(serial.correction) && check(staged_corr);
            out.partition = std::move(sync.partition);
            out.growth_iterations = sync.growth_iterations;
            out.cycles = sync.cycles;
            out.stages = sync.stages;
            out.fully_grown = std::move(sync.fully_grown);
            out.correction = peel(graph, sync.forest, syndrome);
            break;
        }
    }
    return out;
}

struct TrialRecord {
    long trial = 0;
    std::uint64_t seed = 0;
    std::size_t num_defects = 0;
    long cycles = 0;
    int growth_iterations = 0;
    bool annihilated = true;
    bool logical_failure = false;
    bool mismatch = false;
    std::vector<EdgeIndex> flipped;      // only with keep_patterns
    std::vector<VertexIndex> defects;    // only with keep_patterns
};

class InvariantViolation : public std::runtime_error {
   public:
    InvariantViolation(long trial, std::uint64_t seed, const std::string& what)
        : std::runtime_error("trial " + std::to_string(trial) + " (seed " + std::to_string(seed) + "): " + what),
          trial_(trial), seed_(seed) {}
    long trial() const { return trial_; }
    std::uint64_t seed() const { return seed_; }

   private:
    long trial_;
    std::uint64_t seed_;
};

inline TrialRecord run_trial(const ExperimentSetup& setup, const ExperimentConfig& config, long trial) {
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = trial_seed(config.seed, static_cast<std::uint64_t>(trial));
    ErrorPattern errors = sample_trial_errors(setup, config, rec.seed);
    Syndrome syndrome = syndrome_from_errors(setup.graph, errors);
    ShotResult shot = decode_shot(setup.graph, syndrome, config.mode, schedule_seed_for(rec.seed));
    ShotOutcome outcome = evaluate_shot(setup.graph, errors, shot.correction);
    rec.num_defects = syndrome.defects.size();
    rec.cycles = shot.cycles;
    rec.growth_iterations = shot.growth_iterations;
    rec.annihilated = outcome.annihilated && shot.all_corrections_annihilate;
    rec.logical_failure = outcome.logical_failure;
    rec.mismatch = shot.mismatch;
    if (config.keep_patterns) {
        rec.flipped = std::move(errors.flipped);
        rec.defects = std::move(syndrome.defects);
    }
    if (config.abort_on_violation) {
        if (!rec.annihilated) throw InvariantViolation(trial, rec.seed, "correction does not annihilate the syndrome");
        if (rec.mismatch) throw InvariantViolation(trial, rec.seed, shot.mismatch_detail);
    }
    return rec;
}

struct Percentiles {
    long p50 = 0, p90 = 0, p99 = 0, p999 = 0, p9999 = 0;
};

struct TrialStats {
    ExperimentConfig config;
    long trials = 0;
    double mean_cycles = 0.0;
    Percentiles percentiles;
    std::map<long, long> cycle_histogram;
    std::map<int, long> iteration_histogram;
    double mean_defects = 0.0;
    double ns_per_round = 0.0;
    long logical_failures = 0;
    long annihilation_failures = 0;
    long mismatches = 0;

    double logical_rate() const { return trials ? static_cast<double>(logical_failures) / static_cast<double>(trials) : 0.0; }
    double fraction_iterations_at_most(int k) const {
        long n = 0;
        for (const auto& [it, c] : iteration_histogram) {
            if (it <= k) n += c;
        }
        return trials ? static_cast<double>(n) / static_cast<double>(trials) : 0.0;
    }
};

/// Nearest-rank percentile of an ascending sample.
inline long nearest_rank(const std::vector<long>& sorted, double q) {
    if (sorted.empty()) return 0;
    auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

/// Aggregates records in trial order.
inline TrialStats summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& records) {
    TrialStats s;
    s.config = config;
    s.trials = static_cast<long>(records.size());
    std::vector<long> cycles;
    cycles.reserve(records.size());
    long double sum_cycles = 0, sum_defects = 0;
    for (const TrialRecord& r : records) {
        cycles.push_back(r.cycles);
        sum_cycles += r.cycles;
        sum_defects += static_cast<long double>(r.num_defects);
        ++s.cycle_histogram[r.cycles];
        ++s.iteration_histogram[r.growth_iterations];
        s.logical_failures += r.logical_failure ? 1 : 0;
        s.annihilation_failures += r.annihilated ? 0 : 1;
        s.mismatches += r.mismatch ? 1 : 0;
    }
    if (!records.empty()) {
        s.mean_cycles = static_cast<double>(sum_cycles / records.size());
        s.mean_defects = static_cast<double>(sum_defects / records.size());
    }
    std::sort(cycles.begin(), cycles.end());
    s.percentiles = {nearest_rank(cycles, 0.50), nearest_rank(cycles, 0.90), nearest_rank(cycles, 0.99),
                     nearest_rank(cycles, 0.999), nearest_rank(cycles, 0.9999)};
    s.ns_per_round = s.mean_cycles * config.clock_ns / config.effective_rounds();
    return s;
}

/// Runs all trials on `config.workers` threads. Worker k handles trials
/// k, k + workers, ...; records are merged by trial index, so the outcome does
/// not depend on the worker count. On a violation the lowest failing trial is
/// reported.
inline std::vector<TrialRecord> run_trials(const ExperimentSetup& setup, const ExperimentConfig& config) {
    std::vector<TrialRecord> records(static_cast<std::size_t>(config.trials));
    const int workers = static_cast<int>(std::min<long>(config.workers, config.trials));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<long> error_trial(static_cast<std::size_t>(workers), -1);
    auto work = [&](int k) {
        long t = k;
        try {
            for (; t < config.trials; t += workers) records[static_cast<std::size_t>(t)] = run_trial(setup, config, t);
        } catch (...) {
            errors[static_cast<std::size_t>(k)] = std::current_exception();
            error_trial[static_cast<std::size_t>(k)] = t;
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < workers; ++k) pool.emplace_back(work, k);
        for (auto& th : pool) th.join();
    }
    int first = -1;
    for (int k = 0; k < workers; ++k) {
        if (errors[static_cast<std::size_t>(k)] &&
            (first < 0 || error_trial[static_cast<std::size_t>(k)] < error_trial[static_cast<std::size_t>(first)])) {
            first = k;
        }
    }
    if (first >= 0) std::rethrow_exception(errors[static_cast<std::size_t>(first)]);
    return records;
}

inline TrialStats run_experiment(const ExperimentConfig& config, std::vector<TrialRecord>* records_out = nullptr) {
    ExperimentSetup setup = prepare(config);
    auto records = run_trials(setup, config);
    TrialStats stats = summarize(config, records);
    if (records_out) *records_out = std::move(records);
    return stats;
}

inline std::vector<TrialStats> sweep(const std::vector<ExperimentConfig>& configs) {
    if (configs.empty()) throw std::invalid_argument("sweep needs at least one configuration");
    std::vector<TrialStats> out;
    out.reserve(configs.size());
    for (const auto& c : configs) out.push_back(run_experiment(c));
    return out;
}

// ---- reports ---------------------------------------------------------------

inline const char* kCsvHeader =
    "d,rounds,p,mode,trials,mean_cycles,p50,p90,p99,p999,p9999,ns_per_round,logical_rate,mismatches";

inline std::string format_double(const char* fmt, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

inline std::string csv_row(const TrialStats& s) {
    const auto& c = s.config;
    std::ostringstream os;
    os << c.d << ',' << c.effective_rounds() << ',' << format_double("%g", c.weighted ? c.weighted->mean : c.p)
       << ',' << to_string(c.mode) << ',' << s.trials << ',' << format_double("%.6f", s.mean_cycles) << ','
       << s.percentiles.p50 << ',' << s.percentiles.p90 << ',' << s.percentiles.p99 << ',' << s.percentiles.p999
       << ',' << s.percentiles.p9999 << ',' << format_double("%.6f", s.ns_per_round) << ','
       << format_double("%.8f", s.logical_rate()) << ',' << s.mismatches;
    return os.str();
}

inline void write_csv(std::ostream& out, const std::vector<TrialStats>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) out << csv_row(r) << '\n';
}

inline nlohmann::ordered_json to_json(const TrialStats& s) {
    const auto& c = s.config;
    nlohmann::ordered_json j;
    j["d"] = c.d;
    j["rounds"] = c.effective_rounds();
    j["p"] = c.p;
    if (c.weighted) {
        j["weighted"] = {{"mean", c.weighted->mean}, {"stddev", c.weighted->stddev}, {"w_max", c.weighted->w_max}};
    }
    j["mode"] = to_string(c.mode);
    j["seed"] = c.seed;
    j["trials"] = s.trials;
    j["clock_ns"] = c.clock_ns;
    j["mean_cycles"] = s.mean_cycles;
    j["percentiles"] = {{"p50", s.percentiles.p50},
                        {"p90", s.percentiles.p90},
                        {"p99", s.percentiles.p99},
                        {"p999", s.percentiles.p999},
                        {"p9999", s.percentiles.p9999}};
    j["ns_per_round"] = s.ns_per_round;
    j["mean_defects"] = s.mean_defects;
    j["logical_failures"] = s.logical_failures;
    j["logical_rate"] = s.logical_rate();
    j["annihilation_failures"] = s.annihilation_failures;
    j["mismatches"] = s.mismatches;
    auto& ch = j["cycle_histogram"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.cycle_histogram) ch[std::to_string(k)] = v;
    auto& ih = j["iteration_histogram"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.iteration_histogram) ih[std::to_string(k)] = v;
    return j;
}

inline void write_json(std::ostream& out, const std::vector<TrialStats>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
}

// ---- graph dump ------------------------------------------------------------

inline nlohmann::ordered_json graph_to_json(const DecodingGraph& g) {
    nlohmann::ordered_json j;
    const auto& c = g.config();
    j["config"] = {{"d", c.d},
                   {"rounds", c.rounds},
                   {"weight_mode", c.weight_mode == WeightMode::weighted ? "weighted" : "unweighted"},
                   {"w_max", c.weight_mode == WeightMode::weighted ? c.w_max : 2}};
    auto& vs = j["vertices"] = nlohmann::ordered_json::array();
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
        const Vertex& x = g.vertex(v);
        vs.push_back({{"id", id_of(v).value},
                      {"round", x.round},
                      {"row", x.row},
                      {"col", x.col},
                      {"is_boundary", x.is_boundary}});
    }
    auto& es = j["edges"] = nlohmann::ordered_json::array();
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
        const Edge& x = g.edge(e);
        es.push_back({{"index", e},
                      {"u", id_of(x.u).value},
                      {"v", id_of(x.v).value},
                      {"kind", to_string(x.kind)},
                      {"w", x.w}});
    }
    return j;
}

// ---- replay records ----------------------------------------------------------

/// One JSON line: {"trial": n, "defects": [ids], "flipped": [edge indices]}.
/// Extra keys (cycles, growth_iterations, ...) are written by the trial log and
/// ignored on input.
struct ReplayRecord {
    long trial = 0;
    std::optional<std::vector<std::uint32_t>> defect_ids;
    std::optional<std::vector<EdgeIndex>> flipped;
};

class ReplayParseError : public std::runtime_error {
   public:
    ReplayParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

   private:
    std::size_t line_;
};

/// `config_index` tags lines of a multi-configuration sweep; -1 omits the tag.
inline std::string trial_log_line(const TrialRecord& r, int config_index = -1) {
    nlohmann::ordered_json j;
    if (config_index >= 0) j["config"] = config_index;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    auto& d = j["defects"] = nlohmann::ordered_json::array();
    for (VertexIndex v : r.defects) d.push_back(id_of(v).value);
    j["flipped"] = r.flipped;
    j["cycles"] = r.cycles;
    j["growth_iterations"] = r.growth_iterations;
    j["annihilated"] = r.annihilated;
    j["logical_failure"] = r.logical_failure;
    j["mismatch"] = r.mismatch;
    return j.dump();
}

inline std::vector<ReplayRecord> parse_replay(std::istream& in) {
    std::vector<ReplayRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ReplayParseError(lineno, std::string("malformed JSON: ") + e.what());
        }
        if (!j.is_object()) throw ReplayParseError(lineno, "record is not a JSON object");
        ReplayRecord r;
        try {
            if (j.contains("trial")) r.trial = j.at("trial").get<long>();
            if (j.contains("defects")) r.defect_ids = j.at("defects").get<std::vector<std::uint32_t>>();
            if (j.contains("flipped")) r.flipped = j.at("flipped").get<std::vector<EdgeIndex>>();
        } catch (const nlohmann::json::exception& e) {
            throw ReplayParseError(lineno, std::string("bad field: ") + e.what());
        }
        if (!r.defect_ids && !r.flipped) throw ReplayParseError(lineno, "record needs 'defects' or 'flipped'");
        out.push_back(std::move(r));
    }
    return out;
}

struct ReplayOutcome {
    Syndrome syndrome;
    ShotResult shot;
    ShotOutcome outcome;
};

/// Re-decodes a recorded shot. With a flipped-edge list the full outcome
/// (annihilation + logical check) is evaluated; with defects only, annihilation
/// means the correction reproduces the syndrome and no logical check is made.
inline ReplayOutcome replay(const DecodingGraph& graph, const ReplayRecord& rec, Mode mode,
                            std::uint64_t schedule_seed, TraceFn trace = {}) {
    ReplayOutcome out;
    if (rec.flipped) {
        for (EdgeIndex e : *rec.flipped) {
            if (e >= graph.num_edges()) throw std::out_of_range("record flips unknown edge " + std::to_string(e));
        }
        out.syndrome = syndrome_from_errors(graph, ErrorPattern{*rec.flipped});
    }
    if (rec.defect_ids) {
        Syndrome given;
        for (std::uint32_t id : *rec.defect_ids) {
            if (id == 0 || id > graph.num_real()) {
                throw std::out_of_range("record names unknown real vertex " + std::to_string(id));
            }
            given.defects.push_back(index_of(VertexId{id}));
        }
        std::sort(given.defects.begin(), given.defects.end());
        if (rec.flipped && given != out.syndrome) {
            throw std::invalid_argument("recorded defects do not match the recorded flipped edges");
        }
        out.syndrome = std::move(given);
    }
    out.shot = decode_shot(graph, out.syndrome, mode, schedule_seed, std::move(trace));
    if (rec.flipped) {
        out.outcome = evaluate_shot(graph, ErrorPattern{*rec.flipped}, out.shot.correction);
    } else {
        out.outcome.residual = out.shot.correction.edges;
        out.outcome.annihilated =
            syndrome_from_errors(graph, ErrorPattern{out.shot.correction.edges}) == out.syndrome;
    }
    out.outcome.annihilated = out.outcome.annihilated && out.shot.all_corrections_annihilate;
    return out;
}

}  // namespace ufsim
