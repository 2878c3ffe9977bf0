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

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ufsim/ufsim.hpp"

namespace {

using namespace ufsim;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct CommonArgs {
    std::vector<int> d{13};
    int rounds = 0;
    std::vector<double> p{0.001};
    long trials = 10'000;
    std::uint64_t seed = 1;
    std::string mode = "sync";
    bool weighted = false;
    double mean = 0.001;
    double stddev = 0.0005;
    std::vector<int> w_max{16};
    double clock_ns = 10.0;
    int workers = 1;
    std::string out;
    std::string format = "csv";
    std::string dump_graph;
    std::string trace;
    std::string log;
    std::string in;
    long trial = 0;
};

std::unique_ptr<std::ofstream> open_out(const std::string& path) {
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
    return f;
}

void check_written(std::ostream& os, const std::string& path) {
    os.flush();
    if (!os) throw IoError("write to '" + path + "' failed");
}

void add_graph_flags(CLI::App* cmd, CommonArgs& a, bool lists) {
    if (lists) {
        cmd->add_option("--d", a.d, "Code distance(s), odd and >= 3")->delimiter(',');
        cmd->add_option("--p", a.p, "Physical error rate(s)")->delimiter(',');
        cmd->add_option("--wmax", a.w_max, "Largest edge weight(s) in weighted mode")->delimiter(',');
    } else {
        cmd->add_option("--d", a.d, "Code distance, odd and >= 3")->expected(1);
        cmd->add_option("--p", a.p, "Physical error rate")->expected(1);
        cmd->add_option("--wmax", a.w_max, "Largest edge weight in weighted mode")->expected(1);
    }
    cmd->add_option("--rounds", a.rounds, "Measurement rounds (default: d)");
    cmd->add_flag("--weighted", a.weighted, "Per-edge probabilities from normal(mean, stddev)");
    cmd->add_option("--mean", a.mean, "Mean of the per-edge probability distribution");
    cmd->add_option("--stddev", a.stddev, "Standard deviation of the per-edge probability distribution");
    cmd->add_option("--seed", a.seed, "Master seed");
}

std::vector<ExperimentConfig> expand(const CommonArgs& a, Mode mode) {
    std::vector<ExperimentConfig> out;
    for (int d : a.d) {
        if (a.weighted) {
            for (int w : a.w_max) {
                ExperimentConfig c;
                c.d = d;
                c.rounds = a.rounds;
                c.p = a.mean;
                c.weighted = WeightedNoise{a.mean, a.stddev, w};
                out.push_back(c);
            }
        } else {
            for (double p : a.p) {
                ExperimentConfig c;
                c.d = d;
                c.rounds = a.rounds;
                c.p = p;
                out.push_back(c);
            }
        }
    }
    for (auto& c : out) {
        c.trials = a.trials;
        c.seed = a.seed;
        c.mode = mode;
        c.clock_ns = a.clock_ns;
        c.workers = a.workers;
        c.keep_patterns = !a.log.empty();
        c.validate();
    }
    return out;
}

void dump_graph(const DecodingGraph& g, const std::string& path) {
    auto f = open_out(path);
    *f << graph_to_json(g).dump(2) << '\n';
    check_written(*f, path);
}

nlohmann::ordered_json shot_json(const DecodingGraph& g, const Syndrome& syndrome, const ShotResult& shot,
                                 const ShotOutcome& outcome) {
    nlohmann::ordered_json j;
    auto& defects = j["defects"] = nlohmann::ordered_json::array();
    for (VertexIndex v : syndrome.defects) defects.push_back(id_of(v).value);
    j["cycles"] = shot.cycles;
    j["growth_iterations"] = shot.growth_iterations;
    j["correction"] = shot.correction.edges;
    j["annihilated"] = outcome.annihilated;
    j["logical_failure"] = outcome.logical_failure;
    j["mismatch"] = shot.mismatch;
    if (shot.mismatch) j["mismatch_detail"] = shot.mismatch_detail;
    j["clusters"] = count_clusters(g, shot.fully_grown);
    return j;
}

int cmd_decode(const CommonArgs& a) {
    auto configs = expand(a, parse_mode(a.mode));
    const ExperimentConfig& c = configs.front();
    ExperimentSetup setup = prepare(c);
    if (!a.dump_graph.empty()) dump_graph(setup.graph, a.dump_graph);
    const std::uint64_t seed = trial_seed(c.seed, static_cast<std::uint64_t>(a.trial));
    ErrorPattern errors = sample_trial_errors(setup, c, seed);
    Syndrome syndrome = syndrome_from_errors(setup.graph, errors);
    std::unique_ptr<std::ofstream> trace_file;
    TraceFn trace;
    if (!a.trace.empty()) {
        trace_file = open_out(a.trace);
        *trace_file << "cycle,vertex_id,field,old,new\n";
        trace = csv_trace(*trace_file);
    }
    ShotResult shot = decode_shot(setup.graph, syndrome, c.mode, schedule_seed_for(seed), trace);
    ShotOutcome outcome = evaluate_shot(setup.graph, errors, shot.correction);
    if (trace_file) check_written(*trace_file, a.trace);

    nlohmann::ordered_json j;
    j["trial"] = a.trial;
    j["seed"] = seed;
    j["mode"] = to_string(c.mode);
    j["flipped"] = errors.flipped;
    j.update(shot_json(setup.graph, syndrome, shot, outcome));
    if (a.out.empty()) {
        std::cout << j.dump() << '\n';
    } else {
        auto f = open_out(a.out);
        *f << j.dump() << '\n';
        check_written(*f, a.out);
    }
    const bool ok = outcome.annihilated && shot.all_corrections_annihilate && !shot.mismatch;
    return ok ? 0 : kExitViolation;
}

int cmd_bench(const CommonArgs& a, Mode mode) {
    auto configs = expand(a, mode);
    if (!a.dump_graph.empty()) dump_graph(prepare(configs.front()).graph, a.dump_graph);
    std::unique_ptr<std::ofstream> log;
    if (!a.log.empty()) log = open_out(a.log);
    std::vector<TrialStats> rows;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        std::vector<TrialRecord> records;
        rows.push_back(run_experiment(configs[i], log ? &records : nullptr));
        if (log) {
            for (const auto& r : records) *log << trial_log_line(r, configs.size() > 1 ? static_cast<int>(i) : -1) << '\n';
        }
    }
    if (log) check_written(*log, a.log);
    std::unique_ptr<std::ofstream> file;
    if (!a.out.empty()) file = open_out(a.out);
    std::ostream& os = file ? *file : std::cout;
    if (a.format == "json") {
        write_json(os, rows);
    } else {
        write_csv(os, rows);
    }
    if (file) check_written(*file, a.out);
    for (const auto& r : rows) {
        if (r.mismatches || r.annihilation_failures) return kExitViolation;
    }
    return 0;
}

int cmd_replay(const CommonArgs& a) {
    auto configs = expand(a, parse_mode(a.mode));
    ExperimentSetup setup = prepare(configs.front());
    std::ifstream in(a.in);
    if (!in) throw IoError("cannot open '" + a.in + "' for reading: " + std::strerror(errno));
    auto records = parse_replay(in);
    std::unique_ptr<std::ofstream> trace_file;
    if (!a.trace.empty()) {
        trace_file = open_out(a.trace);
        *trace_file << "trial,cycle,vertex_id,field,old,new\n";
    }
    std::unique_ptr<std::ofstream> file;
    if (!a.out.empty()) file = open_out(a.out);
    std::ostream& os = file ? *file : std::cout;
    bool ok = true;
    for (const auto& rec : records) {
        TraceFn trace;
        if (trace_file) {
            trace = [&f = *trace_file, t = rec.trial](const TraceEvent& ev) {
                f << t << ',';
                csv_trace(f)(ev);
            };
        }
        const std::uint64_t seed = trial_seed(a.seed, static_cast<std::uint64_t>(rec.trial));
        ReplayOutcome r = replay(setup.graph, rec, configs.front().mode, schedule_seed_for(seed), trace);
        nlohmann::ordered_json j;
        j["trial"] = rec.trial;
        j["mode"] = to_string(configs.front().mode);
        j.update(shot_json(setup.graph, r.syndrome, r.shot, r.outcome));
        os << j.dump() << '\n';
        ok = ok && r.outcome.annihilated && !r.shot.mismatch;
    }
    if (trace_file) check_written(*trace_file, a.trace);
    if (file) check_written(*file, a.out);
    return ok ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Union-find decoder simulator for the rotated surface code"};
    app.require_subcommand(1);
    CommonArgs a;

    auto* decode = app.add_subcommand("decode", "Decode a single sampled shot and print it as JSON");
    add_graph_flags(decode, a, false);
    decode->add_option("--trial", a.trial, "Trial index whose seed stream is used");
    decode->add_option("--mode", a.mode, "serial | staged | sync | verify")->check(
        CLI::IsMember({"serial", "staged", "sync", "verify"}));
    decode->add_option("--trace", a.trace, "Write a per-cycle register trace (CSV)");
    decode->add_option("--dump-graph", a.dump_graph, "Write the decoding graph as JSON");
    decode->add_option("--out", a.out, "Output path (default: stdout)");

    auto add_run_flags = [&](CLI::App* cmd, bool with_mode) {
        add_graph_flags(cmd, a, true);
        cmd->add_option("--trials", a.trials, "Trials per configuration")->check(CLI::PositiveNumber);
        if (with_mode) {
            cmd->add_option("--mode", a.mode, "serial | staged | sync | verify")->check(
                CLI::IsMember({"serial", "staged", "sync", "verify"}));
        }
        cmd->add_option("--clock-ns", a.clock_ns, "Clock period for ns_per_round")->check(CLI::PositiveNumber);
        cmd->add_option("--workers", a.workers, "Worker threads")->check(CLI::PositiveNumber);
        cmd->add_option("--out", a.out, "Report path (default: stdout)");
        cmd->add_option("--format", a.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--dump-graph", a.dump_graph, "Write the first configuration's graph as JSON");
        cmd->add_option("--log", a.log, "Write one JSON line per trial");
    };
    auto* bench = app.add_subcommand("bench", "Run a sweep and report cycle statistics");
    add_run_flags(bench, true);
    auto* verify = app.add_subcommand("verify", "Check serial, staged and synchronous decoders agree");
    add_run_flags(verify, false);

    auto* rep = app.add_subcommand("replay", "Re-decode shots from a JSON-lines record file");
    add_graph_flags(rep, a, false);
    rep->add_option("--in", a.in, "Record file")->required();
    rep->add_option("--mode", a.mode, "serial | staged | sync | verify")->check(
        CLI::IsMember({"serial", "staged", "sync", "verify"}));
    rep->add_option("--trace", a.trace, "Write per-cycle register traces (CSV)");
    rep->add_option("--out", a.out, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*decode) return cmd_decode(a);
        if (*bench) return cmd_bench(a, parse_mode(a.mode));
        if (*verify) return cmd_bench(a, Mode::verify);
        if (*rep) return cmd_replay(a);
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kExitViolation;
    } catch (const LivenessError& e) {
        std::cerr << "liveness failure: " << e.what() << '\n';
        return kExitViolation;
    } catch (const std::logic_error& e) {
        // peel() and the result collectors signal broken decoder invariants this way;
        // argument errors (std::invalid_argument, std::out_of_range) are usage errors.
        if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e)) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitUsage;
        }
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
