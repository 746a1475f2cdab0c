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

#ifndef FKLAB_PROVER_H
#define FKLAB_PROVER_H

#include <cstdint>
#include <optional>
#include <vector>

#include "fklab/lattice.h"
#include "fklab/rng.h"
#include "fklab/simulator.h"

namespace fklab {

/// Device imperfections of a simulated prover.
struct NoiseModel {
    double theta = 0;         ///< clock phase (any fixed value is acceptable)
    double eta = 0;           ///< evolution runs for time 1 + eta
    double input_tilt = 0;    ///< per-qubit Rz error on state preparation, radians
    double meas_flip = 0;     ///< probability that a reported outcome is flipped
    double depolarizing = 0;  ///< probability that the output register is fully mixed

    /// Throws ValidationError if a rate leaves [0, 1] or an angle is not finite.
    void validate() const;
    bool operator==(const NoiseModel &) const = default;
};

/// Protocol-level parameters of a (possibly mixed) clock+system state.
struct ExactParameters {
    double f_in = 0;
    double p_samp = 0;
    complex_t tr_rho_o10 = 0;
    double f_out = 0;
    double purity = 0;

    /// 4 |Tr rho O10|^2, the quantity the verifier thresholds.
    double o10_sq_scaled() const { return 4 * std::norm(tr_rho_o10); }
};

/// One stochastic component of the output register. An empty state means
/// the maximally mixed state I / 2^n (no coherence with the clock).
struct OutputBranch {
    double probability = 1;
    std::optional<PureState> output;
};

/// Mixture of single-step history states
///   (|0>|input> + e^{i clock_phase} |1>|output_b>) / sqrt(2)
/// sharing one input component.
struct HistoryStateModel {
    LatticeGeometry lattice;
    InputSpec input;
    double clock_phase = 0;
    PureState input_component;
    PureState output_component;  ///< coherent branch
    std::vector<OutputBranch> stochastic_mixture;

    size_t num_system_qubits() const { return lattice.num_qubits(); }
    /// The coherent (n+1)-qubit history state; clock is the most significant qubit.
    PureState coherent_state() const;
};

/// Exact parameters of a model, computed from its components (any n <= 26).
ExactParameters model_parameters(const HistoryStateModel &model);

HistoryStateModel make_honest_model(const LatticeGeometry &lattice, const InputSpec &input, const NoiseModel &noise);

/// Noiseless-except-for (eta, tilt) model whose exact 4|Tr rho O10|^2 and
/// F_in hit the targets within 1e-6. Throws SearchError if unreachable.
HistoryStateModel make_degraded_model(const LatticeGeometry &lattice, const InputSpec &input, double target_o10_sq,
                                      double target_f_in);

/// (|0>|phi_in> + e^{i theta}|1> U^time |phi_in>)/sqrt(2) built directly.
PureState ideal_history_state(const LatticeGeometry &lattice, const InputSpec &input, double theta = 0,
                              double time = 1);

/// Gate-level echo circuit on |+>|phi_in> using only Hadamards on partition
/// B, two global CZs from the clock, a clock X, and two half-time ZZ
/// evolutions. Returns the (n+1)-qubit state with the clock on top.
PureState echo_prepare(const LatticeGeometry &lattice, const InputSpec &input, double time = 1);

/// Largest lattice echo_prepare accepts.
inline constexpr size_t kMaxEchoQubits = 20;

enum class MeasurementMode : uint8_t { SAMPLE, INPUT_TEST, PROP_TEST_X, PROP_TEST_Y };

const char *mode_name(MeasurementMode mode);

struct MeasurementInstruction {
    MeasurementMode mode = MeasurementMode::SAMPLE;

    Basis clock_basis() const;
    /// Clock outcome on which the system register is measured (SAMPLE and
    /// INPUT_TEST); propagation tests always measure it.
    std::optional<int8_t> system_trigger() const;
    std::vector<Basis> system_bases(const InputSpec &input) const;
};

/// Compact per-copy result. Bit k of system_bits set means qubit k read -1.
struct PackedOutcome {
    int8_t clock = 1;
    bool system_measured = false;
    uint64_t system_bits = 0;
};

/// What the verifier talks to. Implementations must be safe to call
/// concurrently given distinct random streams.
class ProverInterface {
   public:
    virtual ~ProverInterface() = default;
    virtual size_t num_system_qubits() const = 0;
    virtual PackedOutcome measure(const MeasurementInstruction &instruction, RandomStream &rng) const = 0;
};

/// Prover that answers from the exact Born-rule statistics of a model.
/// All conditional distributions are tabulated up front, so each copy costs
/// O(1) draws plus O(n) when measurement flips are enabled.
class SimulatedProver final : public ProverInterface {
   public:
    SimulatedProver(HistoryStateModel model, NoiseModel noise);

    size_t num_system_qubits() const override { return model_.num_system_qubits(); }
    PackedOutcome measure(const MeasurementInstruction &instruction, RandomStream &rng) const override;

    const HistoryStateModel &model() const { return model_; }
    const NoiseModel &noise() const { return noise_; }
    double clock_minus_probability() const { return p_clock_minus_; }

    /// Joint (b, z) distribution for a propagation test; bit n encodes b = -1.
    const Distribution &propagation_distribution(MeasurementMode mode) const;
    /// System outcomes given the true clock value, in the basis the mode uses.
    const Distribution &conditional_distribution(MeasurementMode mode, int8_t clock) const;

   private:
    uint64_t flip_bits(uint64_t bits, size_t count, RandomStream &rng) const;

    HistoryStateModel model_;
    NoiseModel noise_;
    double p_clock_minus_ = 0.5;
    Distribution sample_given_minus_;   // X basis, output register
    Distribution sample_given_plus_;    // X basis, input register
    Distribution input_given_plus_;     // rotated basis, input register
    Distribution input_given_minus_;    // rotated basis, output register
    Distribution prop_x_;
    Distribution prop_y_;
};

MeasurementRecord measure_copy(const SimulatedProver &prover, const MeasurementInstruction &instruction,
                               RandomStream &rng);

}  // namespace fklab

#endif
