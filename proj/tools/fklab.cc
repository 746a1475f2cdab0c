// Copyright 2026 The fklab Authors
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

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fklab/analysis.h"
#include "fklab/errors.h"
#include "fklab/io.h"
#include "fklab/prover.h"
#include "fklab/verifier.h"

namespace fs = std::filesystem;
using namespace fklab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitCapacity = 3;

struct RunArgs {
    std::string config;
    std::optional<uint64_t> seed;
    std::optional<std::string> out;
    bool transcript = false;
    std::optional<uint64_t> reps;
    unsigned threads = 0;
};

std::ofstream open_out(const fs::path &path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return f;
}

std::string rep_name(const char *stem, uint64_t rep, const char *ext) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_rep%03llu.%s", stem, static_cast<unsigned long long>(rep), ext);
    return buf;
}

int cmd_run(const RunArgs &args) {
    ExperimentConfig config = load_experiment_config(args.config);
    if (args.seed) {
        config.seed = *args.seed;
        config.protocol.master_seed = *args.seed;
    }
    if (args.out) {
        config.output_dir = *args.out;
    }
    if (args.reps) {
        if (*args.reps == 0) {
            throw ValidationError("--reps must be positive");
        }
        config.repetitions = *args.reps;
    }
    config.transcript = config.transcript || args.transcript;

    LatticeGeometry lattice = build_lattice(config.rows, config.cols);
    if (lattice.num_qubits() > kMaxStateQubits) {
        throw CapacityError("run needs n <= " + std::to_string(kMaxStateQubits));
    }
    InputSpec input = resolve_input(config);
    SimulatedProver prover = build_prover(config, lattice, input);

    fs::path dir(config.output_dir);
    fs::create_directories(dir);
    std::ofstream summary = open_out(dir / "summary.csv");
    write_summary_header(summary);

    RunOptions options;
    options.threads = args.threads;
    options.record_transcript = config.transcript;
    uint64_t accepts = 0;
    for (uint64_t rep = 0; rep < config.repetitions; rep++) {
        ProtocolConfig pc = config.protocol;
        pc.master_seed = repetition_seed(config.seed, rep);
        ProtocolResult result = run_protocol(prover, lattice, input, pc, options);
        const EstimatorReport &r = result.report;
        accepts += r.accepted ? 1 : 0;

        std::ofstream report_file = open_out(dir / rep_name("report", rep, "json"));
        report_file << format_report(r);
        std::ofstream samples_file = open_out(dir / rep_name("samples", rep, "txt"));
        write_samples(samples_file, r);
        if (config.transcript) {
            std::ofstream t = open_out(dir / rep_name("transcript", rep, "jsonl"));
            write_transcript_jsonl(t, result.transcript);
        }
        write_summary_row(summary, rep, pc.master_seed, r);
        std::printf("rep %llu: %s  F_in,M=%.6f  p_samp,M=%.6f  4|<O10>_M|^2=%.6f%s%s\n",
                    static_cast<unsigned long long>(rep), r.accepted ? "ACCEPT" : "REJECT", r.f_in_m, r.p_samp_m,
                    r.o10_sq_scaled, r.error.empty() ? "" : "  ", r.error.c_str());
    }
    std::printf("accepted %llu of %llu; output in %s\n", static_cast<unsigned long long>(accepts),
                static_cast<unsigned long long>(config.repetitions), dir.string().c_str());
    return kExitOk;
}

int cmd_echo_check(uint32_t rows, uint32_t cols, uint64_t seed) {
    LatticeGeometry lattice = build_lattice(rows, cols);
    if (lattice.num_qubits() > kMaxEchoQubits) {
        throw CapacityError("echo-check needs rows*cols <= " + std::to_string(kMaxEchoQubits));
    }
    RandomStream rng(seed, "input");
    InputSpec input = random_input(lattice.num_qubits(), rng);
    PureState echo = echo_prepare(lattice, input);
    PureState ideal = ideal_history_state(lattice, input);
    double f = state_fidelity(echo, ideal);
    std::printf("lattice %ux%u input %s fidelity %.15f\n", rows, cols, to_string(input).c_str(), f);
    return f >= 1 - 1e-10 ? kExitOk : kExitFailed;
}

int cmd_verify_bounds(const std::string &suite, size_t instances, uint64_t seed, const std::optional<std::string> &out) {
    std::vector<BoundSuiteResult> rows = run_bound_suite(suite, instances, seed);
    std::ostringstream csv;
    write_bound_csv(csv, rows);
    std::cout << csv.str();
    if (out) {
        fs::create_directories(*out);
        std::ofstream f = open_out(fs::path(*out) / ("bounds_" + suite + ".csv"));
        f << csv.str();
    }
    size_t violations = 0;
    for (const auto &r : rows) {
        violations += r.violations;
    }
    return violations == 0 ? kExitOk : kExitFailed;
}

int cmd_report(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read report '" + path + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("report is not valid JSON: ") + e.what());
    }
    std::cout << describe_report(j);
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"fklab: history-state verification experiments"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "Run the protocol as described by a JSON config");
    run->add_option("--config", run_args.config, "Experiment config (JSON)")->required();
    run->add_option("--seed", run_args.seed, "Override the master seed");
    run->add_option("--out", run_args.out, "Override the output directory");
    run->add_flag("--transcript", run_args.transcript, "Write per-copy JSONL transcripts");
    run->add_option("--reps", run_args.reps, "Override the repetition count");
    run->add_option("--threads", run_args.threads, "Worker threads (0 = all; capped by FKLAB_THREADS)");

    uint32_t rows = 2, cols = 2;
    uint64_t echo_seed = 0;
    auto *echo = app.add_subcommand("echo-check", "Compare the echo circuit with the ideal history state");
    echo->add_option("--rows", rows, "Lattice rows")->required();
    echo->add_option("--cols", cols, "Lattice columns")->required();
    echo->add_option("--seed", echo_seed, "Seed for the random input");

    std::string suite;
    size_t instances = 1000;
    uint64_t bound_seed = 0;
    std::optional<std::string> bound_out;
    auto *bounds = app.add_subcommand("verify-bounds", "Run a randomized bound suite and print CSV");
    bounds->add_option("suite", suite, "Suite name or 'all'")->required();
    bounds->add_option("--instances", instances, "Random instances per suite");
    bounds->add_option("--seed", bound_seed, "Master seed");
    bounds->add_option("--out", bound_out, "Also write bounds_<suite>.csv here");

    std::string report_path;
    auto *report = app.add_subcommand("report", "Pretty-print a report JSON");
    report->add_option("path", report_path, "Report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (*run) {
            return cmd_run(run_args);
        }
        if (*echo) {
            return cmd_echo_check(rows, cols, echo_seed);
        }
        if (*bounds) {
            return cmd_verify_bounds(suite, instances, bound_seed, bound_out);
        }
        if (*report) {
            return cmd_report(report_path);
        }
    } catch (const CapacityError &e) {
        std::fprintf(stderr, "fklab: capacity: %s\n", e.what());
        return kExitCapacity;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "fklab: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "fklab: %s\n", e.what());
        return kExitFailed;
    }
    return kExitFailed;
}
