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

#ifndef FKLAB_IO_H
#define FKLAB_IO_H

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>

#include "fklab/lattice.h"
#include "fklab/prover.h"
#include "fklab/verifier.h"

namespace fklab {

using json = nlohmann::ordered_json;

json lattice_to_json(const LatticeGeometry &lattice);
/// Accepts {"rows","cols"} with optional "edges"/"partition_b", which must
/// then agree with the rebuilt geometry. Throws ValidationError.
LatticeGeometry lattice_from_json(const json &j);

json noise_to_json(const NoiseModel &noise);
NoiseModel noise_from_json(const json &j);

enum class ProverKind : uint8_t {
    HONEST,    ///< make_honest_model with the configured noise
    DEGRADED,  ///< make_degraded_model(target_o10_sq, target_f_in)
    ROBUST,    ///< output overlap |<phi'|U|phi_in>|^2 tuned to target_f_out
};

struct ProverSpec {
    ProverKind kind = ProverKind::HONEST;
    NoiseModel noise;
    double target_o10_sq = 1;
    double target_f_in = 1;
    double target_f_out = 1;
};

struct ExperimentConfig {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::optional<InputSpec> input;  ///< drawn from input_seed when absent
    uint64_t input_seed = 0;
    ProverSpec prover;
    ProtocolConfig protocol;
    uint64_t seed = 0;
    uint64_t repetitions = 1;
    std::string output_dir = "fklab_out";
    bool transcript = false;
};

/// Parses an experiment config. Required: lattice.rows, lattice.cols,
/// protocol.num_copies, seed. Unknown keys are rejected. Throws ValidationError.
ExperimentConfig parse_experiment_config(const json &j);
ExperimentConfig load_experiment_config(const std::string &path);

/// The input the config describes (explicit, or drawn from input_seed).
InputSpec resolve_input(const ExperimentConfig &config);
HistoryStateModel build_model(const ExperimentConfig &config, const LatticeGeometry &lattice,
                              const InputSpec &input);
SimulatedProver build_prover(const ExperimentConfig &config, const LatticeGeometry &lattice, const InputSpec &input);

/// Master seed of repetition r.
uint64_t repetition_seed(uint64_t seed, uint64_t rep);

json counters_to_json(const Counters &c);
json report_to_json(const EstimatorReport &report);
/// The serialized form used for report files (2-space indent, trailing newline).
std::string format_report(const EstimatorReport &report);

/// One JSON object per line.
void write_transcript_jsonl(std::ostream &out, const ProtocolTranscript &transcript);
json transcript_record_to_json(const TranscriptRecord &r, size_t num_system_qubits);

/// One line per sample; character k is qubit k ('1' = outcome -1).
void write_samples(std::ostream &out, const EstimatorReport &report);
std::string bit_string(uint64_t bits, size_t n);

void write_summary_header(std::ostream &out);
void write_summary_row(std::ostream &out, uint64_t rep, uint64_t master_seed, const EstimatorReport &report);

/// Human-readable rendering of a report JSON for `fklab report`.
std::string describe_report(const json &report);

}  // namespace fklab

#endif
