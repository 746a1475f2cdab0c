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

#include "fklab/io.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "fklab/errors.h"

namespace fklab {

namespace {

void check_keys(const json &j, const char *where, std::initializer_list<const char *> allowed) {
    if (!j.is_object()) {
        throw ValidationError(std::string(where) + " must be a JSON object");
    }
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &[key, _] : j.items()) {
        if (!ok.count(key)) {
            throw ValidationError(std::string("unknown key '") + key + "' in " + where);
        }
    }
}

const json &require(const json &j, const char *key, const char *where) {
    if (!j.contains(key)) {
        throw ValidationError(std::string("missing field '") + key + "' in " + where);
    }
    return j.at(key);
}

template <typename T>
T get_as(const json &j, const char *key, const char *where) {
    try {
        return j.get<T>();
    } catch (const json::exception &) {
        throw ValidationError(std::string("field '") + key + "' in " + where + " has the wrong type");
    }
}

double get_number(const json &j, const char *key, const char *where) {
    if (!j.is_number()) {
        throw ValidationError(std::string("field '") + key + "' in " + where + " must be a number");
    }
    return j.get<double>();
}

uint64_t get_unsigned(const json &j, const char *key, const char *where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<int64_t>() >= 0)) {
        throw ValidationError(std::string("field '") + key + "' in " + where + " must be a non-negative integer");
    }
    return j.get<uint64_t>();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

// ---- lattice / noise ------------------------------------------------------

json lattice_to_json(const LatticeGeometry &lattice) {
    json edges = json::array();
    for (const auto &[i, j] : lattice.edges) {
        edges.push_back({i, j});
    }
    return json{{"rows", lattice.rows}, {"cols", lattice.cols}, {"edges", edges}, {"partition_b", lattice.partition_b}};
}

LatticeGeometry lattice_from_json(const json &j) {
    const char *where = "lattice";
    check_keys(j, where, {"rows", "cols", "edges", "partition_b"});
    uint64_t rows = get_unsigned(require(j, "rows", where), "rows", where);
    uint64_t cols = get_unsigned(require(j, "cols", where), "cols", where);
    if (rows > UINT32_MAX || cols > UINT32_MAX) {
        throw ValidationError("lattice dimensions out of range");
    }
    LatticeGeometry g;
    try {
        g = build_lattice(static_cast<uint32_t>(rows), static_cast<uint32_t>(cols));
    } catch (const DimensionError &e) {
        throw ValidationError(std::string("lattice: ") + e.what());
    }
    if (j.contains("edges")) {
        auto edges = get_as<std::vector<std::array<uint32_t, 2>>>(j.at("edges"), "edges", where);
        std::vector<Edge> got;
        for (const auto &e : edges) {
            got.emplace_back(e[0], e[1]);
        }
        if (got != g.edges) {
            throw ValidationError("lattice edges do not match rows x cols");
        }
    }
    if (j.contains("partition_b")) {
        auto b = get_as<std::vector<uint32_t>>(j.at("partition_b"), "partition_b", where);
        if (b != g.partition_b) {
            throw ValidationError("lattice partition_b does not match rows x cols");
        }
    }
    return g;
}

json noise_to_json(const NoiseModel &noise) {
    return json{{"theta", noise.theta},
                {"eta", noise.eta},
                {"input_tilt", noise.input_tilt},
                {"meas_flip", noise.meas_flip},
                {"depolarizing", noise.depolarizing}};
}

NoiseModel noise_from_json(const json &j) {
    const char *where = "noise";
    check_keys(j, where, {"theta", "eta", "input_tilt", "meas_flip", "depolarizing"});
    NoiseModel n;
    auto opt = [&](const char *key, double &dst) {
        if (j.contains(key)) {
            dst = get_number(j.at(key), key, where);
        }
    };
    opt("theta", n.theta);
    opt("eta", n.eta);
    opt("input_tilt", n.input_tilt);
    opt("meas_flip", n.meas_flip);
    opt("depolarizing", n.depolarizing);
    n.validate();
    return n;
}

// ---- experiment config ----------------------------------------------------

ExperimentConfig parse_experiment_config(const json &j) {
    const char *where = "config";
    check_keys(j, where,
               {"lattice", "input", "input_seed", "prover", "protocol", "seed", "repetitions", "output_dir", "transcript"});
    ExperimentConfig c;

    const json &lat = require(j, "lattice", where);
    LatticeGeometry g = lattice_from_json(lat);
    c.rows = g.rows;
    c.cols = g.cols;

    c.seed = get_unsigned(require(j, "seed", where), "seed", where);
    c.input_seed = c.seed;
    if (j.contains("input_seed")) {
        c.input_seed = get_unsigned(j.at("input_seed"), "input_seed", where);
    }
    if (j.contains("input")) {
        try {
            c.input = input_from_string(get_as<std::string>(j.at("input"), "input", where));
            check_sizes(g, *c.input);
        } catch (const std::invalid_argument &e) {
            throw ValidationError(std::string("input: ") + e.what());
        }
    }

    const json &proto = require(j, "protocol", where);
    check_keys(proto, "protocol", {"num_copies", "threshold_o10", "threshold_fin", "psamp_window"});
    c.protocol.num_copies = get_unsigned(require(proto, "num_copies", "protocol"), "num_copies", "protocol");
    if (proto.contains("threshold_o10")) {
        c.protocol.threshold_o10 = get_number(proto.at("threshold_o10"), "threshold_o10", "protocol");
    }
    if (proto.contains("threshold_fin")) {
        c.protocol.threshold_fin = get_number(proto.at("threshold_fin"), "threshold_fin", "protocol");
    }
    if (proto.contains("psamp_window")) {
        auto w = get_as<std::vector<double>>(proto.at("psamp_window"), "psamp_window", "protocol");
        if (w.size() != 2) {
            throw ValidationError("psamp_window must be [low, high]");
        }
        c.protocol.psamp_low = w[0];
        c.protocol.psamp_high = w[1];
    }
    c.protocol.master_seed = c.seed;
    c.protocol.validate();

    if (j.contains("prover")) {
        const json &p = j.at("prover");
        check_keys(p, "prover", {"kind", "noise", "target_o10_sq", "target_f_in", "target_f_out"});
        std::string kind = p.contains("kind") ? get_as<std::string>(p.at("kind"), "kind", "prover") : "honest";
        if (kind == "honest") {
            c.prover.kind = ProverKind::HONEST;
        } else if (kind == "degraded") {
            c.prover.kind = ProverKind::DEGRADED;
        } else if (kind == "robust") {
            c.prover.kind = ProverKind::ROBUST;
        } else {
            throw ValidationError("unknown prover kind '" + kind + "'");
        }
        if (p.contains("noise")) {
            c.prover.noise = noise_from_json(p.at("noise"));
        }
        auto target = [&](const char *key, double &dst) {
            if (p.contains(key)) {
                dst = get_number(p.at(key), key, "prover");
                if (!(dst >= 0 && dst <= 1)) {
                    throw ValidationError(std::string(key) + " must lie in [0, 1]");
                }
            }
        };
        target("target_o10_sq", c.prover.target_o10_sq);
        target("target_f_in", c.prover.target_f_in);
        target("target_f_out", c.prover.target_f_out);
    }

    if (j.contains("repetitions")) {
        c.repetitions = get_unsigned(j.at("repetitions"), "repetitions", where);
        if (c.repetitions == 0) {
            throw ValidationError("repetitions must be positive");
        }
    }
    if (j.contains("output_dir")) {
        c.output_dir = get_as<std::string>(j.at("output_dir"), "output_dir", where);
    }
    if (j.contains("transcript")) {
        c.transcript = get_as<bool>(j.at("transcript"), "transcript", where);
    }
    return c;
}

ExperimentConfig load_experiment_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read config '" + path + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_experiment_config(j);
}

InputSpec resolve_input(const ExperimentConfig &config) {
    if (config.input) {
        return *config.input;
    }
    RandomStream rng(config.input_seed, "input");
    return random_input(static_cast<size_t>(config.rows) * config.cols, rng);
}

HistoryStateModel build_model(const ExperimentConfig &config, const LatticeGeometry &lattice,
                              const InputSpec &input) {
    switch (config.prover.kind) {
        case ProverKind::DEGRADED:
            return make_degraded_model(lattice, input, config.prover.target_o10_sq, config.prover.target_f_in);
        case ProverKind::ROBUST:
            // With an untilted input, 4|Tr rho O10|^2 equals |<phi'|U|phi_in>|^2.
            return make_degraded_model(lattice, input, config.prover.target_f_out, 1.0);
        case ProverKind::HONEST:
        default:
            return make_honest_model(lattice, input, config.prover.noise);
    }
}

SimulatedProver build_prover(const ExperimentConfig &config, const LatticeGeometry &lattice, const InputSpec &input) {
    NoiseModel readout;
    if (config.prover.kind == ProverKind::HONEST) {
        readout = config.prover.noise;
    }
    return SimulatedProver(build_model(config, lattice, input), readout);
}

uint64_t repetition_seed(uint64_t seed, uint64_t rep) { return derive_seed(seed, "repetition", rep); }

// ---- reports --------------------------------------------------------------

json counters_to_json(const Counters &c) {
    return json{{"s_xu", {c.s_xu.real(), c.s_xu.imag()}},
                {"s_yu", {c.s_yu.real(), c.s_yu.imag()}},
                {"n_x", c.n_x},
                {"n_y", c.n_y},
                {"n_in_plus", c.n_in_plus},
                {"n_in_plus_0", c.n_in_plus_0},
                {"n_input_test", c.n_input_test},
                {"n_clock_minus", c.n_clock_minus},
                {"n_total_sampling", c.n_total_sampling},
                {"n_sampling_clock_minus", c.n_sampling_clock_minus}};
}

json report_to_json(const EstimatorReport &r) {
    json j{{"num_system_qubits", r.num_system_qubits},
           {"f_in_m", r.f_in_m},
           {"p_samp_m", r.p_samp_m},
           {"o10_re", r.o10_m.real()},
           {"o10_im", r.o10_m.imag()},
           {"o10_sq_scaled", r.o10_sq_scaled},
           {"accepted", r.accepted},
           {"error", r.error.empty() ? json(nullptr) : json(r.error)},
           {"num_samples", r.samples.size()},
           {"counters", counters_to_json(r.counters)}};
    return j;
}

std::string format_report(const EstimatorReport &report) { return report_to_json(report).dump(2) + "\n"; }

std::string bit_string(uint64_t bits, size_t n) {
    std::string s(n, '0');
    for (size_t k = 0; k < n; k++) {
        if ((bits >> k) & 1) {
            s[k] = '1';
        }
    }
    return s;
}

json transcript_record_to_json(const TranscriptRecord &r, size_t n) {
    json j{{"copy", r.copy_index},
           {"b_sampling", r.b_sampling ? 1 : 0},
           {"b_testtype", r.b_testtype ? 1 : 0},
           {"mode", mode_name(r.mode)},
           {"clock", r.clock_outcome},
           {"system", r.system_measured ? json(bit_string(r.system_bits, n)) : json(nullptr)}};
    if (r.u) {
        j["u"] = {r.u->real(), r.u->imag()};
    } else {
        j["u"] = nullptr;
    }
    return j;
}

void write_transcript_jsonl(std::ostream &out, const ProtocolTranscript &transcript) {
    for (const auto &r : transcript.records) {
        out << transcript_record_to_json(r, transcript.num_system_qubits).dump() << '\n';
    }
}

void write_samples(std::ostream &out, const EstimatorReport &report) {
    for (uint64_t s : report.samples) {
        out << bit_string(s, report.num_system_qubits) << '\n';
    }
}

void write_summary_header(std::ostream &out) {
    out << "rep,master_seed,accepted,f_in_m,p_samp_m,o10_re,o10_im,o10_sq_scaled,error\n";
}

void write_summary_row(std::ostream &out, uint64_t rep, uint64_t master_seed, const EstimatorReport &r) {
    out << rep << ',' << master_seed << ',' << (r.accepted ? 1 : 0) << ',' << fmt(r.f_in_m) << ',' << fmt(r.p_samp_m)
        << ',' << fmt(r.o10_m.real()) << ',' << fmt(r.o10_m.imag()) << ',' << fmt(r.o10_sq_scaled) << ','
        << r.error << '\n';
}

std::string describe_report(const json &j) {
    auto num = [&](const char *key) -> double {
        if (!j.contains(key) || !j.at(key).is_number()) {
            throw ValidationError(std::string("report is missing '") + key + "'");
        }
        return j.at(key).get<double>();
    };
    if (!j.is_object() || !j.contains("accepted") || !j.at("accepted").is_boolean()) {
        throw ValidationError("report is missing 'accepted'");
    }
    std::ostringstream s;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "decision                %s\n", j.at("accepted").get<bool>() ? "ACCEPT" : "REJECT");
    s << buf;
    if (j.contains("error") && j.at("error").is_string()) {
        s << "error                   " << j.at("error").get<std::string>() << '\n';
    }
    std::snprintf(buf, sizeof(buf), "F_in,M                  %.6f\n", num("f_in_m"));
    s << buf;
    std::snprintf(buf, sizeof(buf), "p_samp,M                %.6f\n", num("p_samp_m"));
    s << buf;
    std::snprintf(buf, sizeof(buf), "<O10>_M                 %.6f %+.6fi\n", num("o10_re"), num("o10_im"));
    s << buf;
    std::snprintf(buf, sizeof(buf), "4|<O10>_M|^2            %.6f\n", num("o10_sq_scaled"));
    s << buf;
    if (j.contains("counters") && j.at("counters").is_object()) {
        for (const auto &[key, value] : j.at("counters").items()) {
            if (value.is_number_unsigned()) {
                std::snprintf(buf, sizeof(buf), "%-24s%llu\n", key.c_str(),
                              static_cast<unsigned long long>(value.get<uint64_t>()));
                s << buf;
            }
        }
    }
    return s.str();
}

}  // namespace fklab
