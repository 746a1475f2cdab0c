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

#ifndef FKLAB_VERIFIER_H
#define FKLAB_VERIFIER_H

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fklab/lattice.h"
#include "fklab/prover.h"

namespace fklab {

struct ProtocolConfig {
    uint64_t num_copies = 3'500'000;
    double threshold_o10 = 0.994;  ///< floor on 4 |<O10>_M|^2
    double threshold_fin = 0.994;  ///< floor on F_in,M
    double psamp_low = 0.494;
    double psamp_high = 0.506;
    uint64_t master_seed = 0;

    /// Throws ValidationError on thresholds outside [0, 1] or an inverted window.
    void validate() const;
};

/// Execution knobs that must not change the result.
struct RunOptions {
    /// 0 picks hardware concurrency. FKLAB_THREADS, when set, caps the value.
    unsigned threads = 0;
    bool record_transcript = false;
};

unsigned resolve_thread_count(unsigned requested);

struct Counters {
    std::complex<double> s_xu = 0;
    std::complex<double> s_yu = 0;
    uint64_t n_x = 0;
    uint64_t n_y = 0;
    uint64_t n_in_plus = 0;
    uint64_t n_in_plus_0 = 0;
    uint64_t n_input_test = 0;    ///< INPUT_TEST copies (denominator of p_samp,M)
    uint64_t n_clock_minus = 0;   ///< INPUT_TEST copies whose clock read -1
    uint64_t n_total_sampling = 0;
    uint64_t n_sampling_clock_minus = 0;  ///< recorded, not used by the decision

    Counters &operator+=(const Counters &o);
    bool operator==(const Counters &) const = default;
};

struct TranscriptRecord {
    uint64_t copy_index = 0;
    bool b_sampling = false;
    bool b_testtype = false;
    MeasurementMode mode = MeasurementMode::SAMPLE;
    int8_t clock_outcome = 1;
    bool system_measured = false;
    uint64_t system_bits = 0;
    std::optional<std::complex<double>> u;  ///< propagation tests only
};

struct ProtocolTranscript {
    size_t num_system_qubits = 0;
    std::vector<TranscriptRecord> records;
};

struct EstimatorReport {
    double f_in_m = 0;
    double p_samp_m = 0;
    std::complex<double> o10_m = 0;
    double o10_sq_scaled = 0;
    bool accepted = false;
    /// Empty unless an estimator denominator was zero (the run is then rejected).
    std::string error;
    size_t num_system_qubits = 0;
    std::vector<uint64_t> samples;  ///< X-basis bit strings, bit k = qubit k read -1
    Counters counters;
};

struct ProtocolResult {
    ProtocolTranscript transcript;  ///< empty unless RunOptions::record_transcript
    EstimatorReport report;
};

/// Threshold test on the three estimates.
bool decide(double o10_sq_scaled, double f_in_m, double p_samp_m, const ProtocolConfig &config);

/// Estimators from counters: h_XU = s_XU / N_X, h_YU = s_YU / N_Y,
/// <O10>_M = (h_XU - i h_YU) / 2, F_in,M = N_in+0 / N_in+,
/// p_samp,M = N_clock_minus / N_input_test.
EstimatorReport estimate(const Counters &counters, const ProtocolConfig &config);

/// Runs the single-round protocol on config.num_copies copies. Branch bits
/// and measurement randomness for copy j come from substreams keyed on
/// (master_seed, j), and partial counters are merged in a fixed tree order,
/// so the result does not depend on the thread count.
ProtocolResult run_protocol(const ProverInterface &prover, const LatticeGeometry &lattice, const InputSpec &input,
                            const ProtocolConfig &config, const RunOptions &options = {});

/// Rebuilds counters by replaying a recorded transcript.
Counters replay_counters(const ProtocolTranscript &transcript, const LatticeGeometry &lattice);

}  // namespace fklab

#endif
