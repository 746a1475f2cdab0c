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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "fklab/analysis.h"
#include "fklab/io.h"
#include "fklab/prover.h"
#include "fklab/verifier.h"

using namespace fklab;

namespace {

struct Line {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Line> results;

void record(int id, const std::string &name, bool pass, const std::string &detail) {
    results.push_back({id, name, pass, detail});
    std::printf("[%s] %d %-22s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Campaign {
    ExactParameters exact;
    size_t accepts = 0;
    size_t reps = 0;
    size_t estimators_in_window = 0;
    double seconds = 0;
};

Campaign run_campaign(const std::string &config_path) {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig config = load_experiment_config(config_path);
    LatticeGeometry lattice = build_lattice(config.rows, config.cols);
    InputSpec input = resolve_input(config);
    SimulatedProver prover = build_prover(config, lattice, input);
    Campaign c;
    c.exact = model_parameters(prover.model());
    c.reps = config.repetitions;
    for (uint64_t rep = 0; rep < config.repetitions; rep++) {
        ProtocolConfig pc = config.protocol;
        pc.master_seed = repetition_seed(config.seed, rep);
        EstimatorReport r = run_protocol(prover, lattice, input, pc).report;
        c.accepts += r.accepted ? 1 : 0;
        bool window = r.f_in_m >= 0.994 && r.o10_sq_scaled >= 0.994 && r.p_samp_m >= 0.494 && r.p_samp_m <= 0.506;
        c.estimators_in_window += window ? 1 : 0;
    }
    c.seconds = seconds_since(t0);
    return c;
}

void completeness(const std::string &configs) {
    Campaign c = run_campaign(configs + "/perfect_4x4.json");
    bool pass = c.reps == 20 && c.accepts >= 19 && c.seconds <= 600;
    record(1, "completeness", pass,
           fmt("accepts %zu/%zu (need >= 19), estimators in window %zu/%zu, %.1f s", c.accepts, c.reps,
               c.estimators_in_window, c.reps, c.seconds));
}

void robustness(const std::string &configs) {
    Campaign c = run_campaign(configs + "/robust_4x4.json");
    bool exact = std::abs(c.exact.f_out - 0.999) <= 1e-6;
    bool pass = exact && c.reps == 20 && 3 * c.accepts >= 2 * c.reps;
    record(2, "robustness", pass,
           fmt("overlap %.9f, accepts %zu/%zu (need >= 2/3), %.1f s", c.exact.f_out, c.accepts, c.reps, c.seconds));
}

void soundness(const std::string &configs) {
    Campaign a = run_campaign(configs + "/degraded_o10_4x4.json");
    Campaign b = run_campaign(configs + "/degraded_fin_4x4.json");
    bool exact = std::abs(a.exact.o10_sq_scaled() - 0.97) <= 1e-6 && std::abs(b.exact.f_in - 0.97) <= 1e-6;
    size_t rej_a = a.reps - a.accepts, rej_b = b.reps - b.accepts;
    bool pass = exact && a.reps == 20 && b.reps == 20 && rej_a >= 19 && rej_b >= 19;
    record(3, "soundness", pass,
           fmt("4|TrO10|^2=%.7f rejects %zu/%zu; F_in=%.7f rejects %zu/%zu (need >= 19 each)",
               a.exact.o10_sq_scaled(), rej_a, a.reps, b.exact.f_in, rej_b, b.reps));
}

void numeric_reproduction() {
    double compound = completeness_rejection_bound(3.5e6);
    double lower = fidelity_lower_bound(0.988 / 4, 0.988);
    double tvd_b = tvd_fidelity_bound(0.915);
    double delta = 0.292;
    double mixed = stochastic_trace_bound(delta, 2 * delta - delta * delta);
    bool pass = std::abs(compound - 0.078) <= 0.002 && std::abs(lower - 0.916) <= 1e-12 && lower >= 0.915 &&
                tvd_b <= 0.292 && std::abs(mixed - delta) <= 1e-12 && std::abs((1 - mixed) - 0.708) <= 1e-12;
    record(4, "numeric_reproduction", pass,
           fmt("compound %.5f, lower bound %.6f, tvd bound %.6f, mixed-extreme %.6f (threshold %.3f)", compound,
               lower, tvd_b, mixed, 1 - mixed));
}

void oracle_equivalence() {
    double worst_u = 0, worst_diag = 0;
    size_t lattices = 0;
    for (uint32_t r = 1; r <= 6; r++) {
        for (uint32_t c = 1; r * c <= 6; c++) {
            if (r * c < 2) {
                continue;
            }
            LatticeGeometry g = build_lattice(r, c);
            Matrix a = dense::propagator_product_formula(g);
            Matrix b = dense::propagator_expm(g);
            worst_u = std::max(worst_u, (a - b).cwiseAbs().maxCoeff());
            for (Eigen::Index z = 0; z < b.rows(); z++) {
                worst_diag = std::max(worst_diag, std::abs(u_value(static_cast<uint64_t>(z), g) - b(z, z)));
            }
            lattices++;
        }
    }
    bool pass = worst_u <= 1e-10 && worst_diag <= 1e-10;
    record(5, "oracle_equivalence", pass,
           fmt("%zu lattices, max |U_prod - expm| %.2e, max |u - diag| %.2e", lattices, worst_u, worst_diag));
}

void echo_correctness() {
    RandomStream rng(2026, "acceptance-echo");
    double worst = 1;
    size_t checks = 0;
    for (auto [r, c] : {std::pair{1u, 2u}, {2u, 2u}, {2u, 3u}, {3u, 3u}}) {
        LatticeGeometry g = build_lattice(r, c);
        for (int k = 0; k < 10; k++) {
            InputSpec in = random_input(g.num_qubits(), rng);
            worst = std::min(worst, state_fidelity(echo_prepare(g, in), ideal_history_state(g, in)));
            checks++;
        }
    }
    double worst_gen = 1;
    for (auto [r, c] : {std::pair{1u, 2u}, {2u, 2u}, {2u, 3u}}) {
        LatticeGeometry g = build_lattice(r, c);
        PureState in = product_state(random_input(g.num_qubits(), rng));
        PureState s = generalized_echo_prepare(zz_terms(g), x_on_partition_b(g), in, 1);
        worst_gen = std::min(worst_gen, state_fidelity(s, dense_history_state(zz_terms(g), in, 1)));
    }
    LatticeGeometry pair = build_lattice(1, 2);
    auto xy = xy_plus_z_terms(pair);
    PureState in = product_state(input_from_string("XY"));
    PureState s = generalized_echo_prepare(xy, PauliString::parse("XY"), in, 1);
    worst_gen = std::min(worst_gen, state_fidelity(s, dense_history_state(xy, in, 1)));
    bool pass = worst >= 1 - 1e-10 && worst_gen >= 1 - 1e-10;
    record(6, "echo_correctness", pass,
           fmt("%zu echo states min fidelity %.15f; generalized echo min fidelity %.15f", checks, worst, worst_gen));
}

void bound_suites() {
    auto t0 = std::chrono::steady_clock::now();
    struct Plan {
        const char *suite;
        size_t instances;
    };
    size_t violations = 0, rows = 0;
    double worst = -INFINITY;
    std::string seen;
    for (Plan p : {Plan{"cauchy_schwarz", 1000}, {"lower_bound", 1000}, {"tvd_chain", 500}, {"stochastic", 500},
                   {"noisy_meas", 1000}, {"martingale", 1000}}) {
        for (const auto &r : run_bound_suite(p.suite, p.instances, 2026)) {
            violations += r.violations;
            worst = std::max(worst, r.max_margin);
            rows++;
            if (r.violations > 0) {
                seen += " " + r.test_name;
            }
        }
    }
    double secs = seconds_since(t0);
    bool pass = violations == 0 && secs <= 300;
    record(7, "bound_suites", pass,
           fmt("%zu checks, %zu violations%s, max margin %.3e, %.1f s", rows, violations, seen.c_str(), worst, secs));
}

void determinism(const std::string &configs) {
    ExperimentConfig config = load_experiment_config(configs + "/perfect_4x4.json");
    LatticeGeometry lattice = build_lattice(config.rows, config.cols);
    InputSpec input = resolve_input(config);
    SimulatedProver prover = build_prover(config, lattice, input);
    ProtocolConfig pc = config.protocol;
    pc.master_seed = repetition_seed(config.seed, 0);
    std::vector<std::string> outputs;
    for (unsigned threads : {1u, 8u, 1u}) {
        RunOptions opt;
        opt.threads = threads;
        EstimatorReport r = run_protocol(prover, lattice, input, pc, opt).report;
        std::ostringstream summary;
        write_summary_row(summary, 0, pc.master_seed, r);
        outputs.push_back(format_report(r) + summary.str());
    }
    bool pass = outputs[0] == outputs[1] && outputs[0] == outputs[2];
    record(8, "determinism", pass,
           fmt("report+summary bytes identical across threads {1, 8} and reruns (%zu bytes)", outputs[0].size()));
}

}  // namespace

int main(int argc, char **argv) {
    std::string configs = argc > 1 ? argv[1] : FKLAB_CONFIG_DIR;
    auto guarded = [](int id, const char *name, auto fn) {
        try {
            fn();
        } catch (const std::exception &e) {
            record(id, name, false, std::string("exception: ") + e.what());
        }
    };
    guarded(1, "completeness", [&] { completeness(configs); });
    guarded(2, "robustness", [&] { robustness(configs); });
    guarded(3, "soundness", [&] { soundness(configs); });
    guarded(4, "numeric_reproduction", [] { numeric_reproduction(); });
    guarded(5, "oracle_equivalence", [] { oracle_equivalence(); });
    guarded(6, "echo_correctness", [] { echo_correctness(); });
    guarded(7, "bound_suites", [] { bound_suites(); });
    guarded(8, "determinism", [&] { determinism(configs); });
    size_t passed = 0;
    for (const auto &l : results) {
        passed += l.pass ? 1 : 0;
    }
    std::printf("%zu of %zu criteria passed\n", passed, results.size());
    return passed == results.size() ? 0 : 1;
}
