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

#include "fklab/prover.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fklab/errors.h"

namespace fklab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

/// |0>|low> / sqrt(2) + phase |1>|high> / sqrt(2).
PureState clock_superposition(const PureState &clock0, const PureState &clock1, complex_t phase) {
    size_t d = clock0.dim();
    std::vector<complex_t> amps(2 * d);
    for (size_t i = 0; i < d; i++) {
        amps[i] = clock0[i] * kInvSqrt2;
        amps[d + i] = phase * clock1[i] * kInvSqrt2;
    }
    return PureState(std::move(amps));
}

std::vector<double> born_probabilities(const PureState &s) {
    std::vector<double> p(s.dim());
    for (size_t i = 0; i < s.dim(); i++) {
        p[i] = std::norm(s[i]);
    }
    return p;
}

PureState in_rotated_basis(PureState s, const InputSpec &input) {
    for (size_t k = 0; k < input.size(); k++) {
        apply_single_qubit_inplace(s, k, gates::rotated_basis_change(input.choices[k]));
    }
    return s;
}

/// Probability vector of the mixed output register in some product basis:
/// coherent branches go through `transform`, fully mixed ones are uniform.
template <typename Transform>
std::vector<double> mixture_probabilities(const HistoryStateModel &m, Transform transform) {
    size_t dim = size_t{1} << m.num_system_qubits();
    std::vector<double> acc(dim, 0.0);
    for (const auto &branch : m.stochastic_mixture) {
        if (branch.probability == 0) {
            continue;
        }
        if (branch.output) {
            auto p = born_probabilities(transform(*branch.output));
            for (size_t i = 0; i < dim; i++) {
                acc[i] += branch.probability * p[i];
            }
        } else {
            double u = branch.probability / static_cast<double>(dim);
            for (auto &a : acc) {
                a += u;
            }
        }
    }
    return acc;
}

PureState tilted_input(const InputSpec &input, double tilt) {
    PureState s = product_state(input);
    if (tilt != 0) {
        auto g = gates::rz(tilt);
        for (size_t k = 0; k < input.size(); k++) {
            apply_single_qubit_inplace(s, k, g);
        }
    }
    return s;
}

/// Bisection for f(x) = target on [lo, hi] with f(lo) > target >= f(hi).
template <typename F>
double bisect_decreasing(F f, double lo, double hi, double target) {
    for (int it = 0; it < 200 && hi - lo > 1e-15; it++) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

void NoiseModel::validate() const {
    auto rate = [](double v, const char *name) {
        if (!(v >= 0 && v <= 1)) {
            throw ValidationError(std::string(name) + " must lie in [0, 1]");
        }
    };
    rate(meas_flip, "meas_flip");
    rate(depolarizing, "depolarizing");
    if (!std::isfinite(theta) || !std::isfinite(eta) || !std::isfinite(input_tilt)) {
        throw ValidationError("noise angles must be finite");
    }
}

PureState HistoryStateModel::coherent_state() const {
    return clock_superposition(input_component, output_component, std::polar(1.0, clock_phase));
}

ExactParameters model_parameters(const HistoryStateModel &m) {
    PureState ideal_in = product_state(m.input);
    PureState u_ideal = apply_zz_evolution(ideal_in, m.lattice, 1.0);
    PureState u_actual = apply_zz_evolution(m.input_component, m.lattice, 1.0);
    double inv_dim = 1.0 / static_cast<double>(u_ideal.dim());

    ExactParameters out;
    out.f_in = state_fidelity(ideal_in, m.input_component);
    out.p_samp = 0.5;
    complex_t tr = 0;
    double f_out = 0;
    double total = 0;
    for (const auto &b : m.stochastic_mixture) {
        total += b.probability;
        if (b.output) {
            tr += b.probability * 0.5 * std::polar(1.0, -m.clock_phase) * inner_product(*b.output, u_actual);
            f_out += b.probability * state_fidelity(*b.output, u_ideal);
        } else {
            f_out += b.probability * inv_dim;
        }
    }
    out.tr_rho_o10 = tr;
    out.f_out = f_out / total;

    // Tr rho^2 over pairs of branches.
    double purity = 0;
    const auto &mix = m.stochastic_mixture;
    for (size_t i = 0; i < mix.size(); i++) {
        for (size_t j = 0; j < mix.size(); j++) {
            double overlap;
            if (mix[i].output && mix[j].output) {
                overlap = std::norm(0.5 * (1.0 + inner_product(*mix[i].output, *mix[j].output)));
            } else {
                overlap = 0.25 + 0.25 * inv_dim;
            }
            purity += mix[i].probability * mix[j].probability * overlap;
        }
    }
    out.purity = purity;
    return out;
}

HistoryStateModel make_honest_model(const LatticeGeometry &lattice, const InputSpec &input, const NoiseModel &noise) {
    check_sizes(lattice, input);
    noise.validate();
    HistoryStateModel m;
    m.lattice = lattice;
    m.input = input;
    m.clock_phase = noise.theta;
    m.input_component = tilted_input(input, noise.input_tilt);
    m.output_component = apply_zz_evolution(m.input_component, lattice, 1.0 + noise.eta);
    if (noise.depolarizing < 1) {
        m.stochastic_mixture.push_back({1.0 - noise.depolarizing, m.output_component});
    }
    if (noise.depolarizing > 0) {
        m.stochastic_mixture.push_back({noise.depolarizing, std::nullopt});
    }
    return m;
}

HistoryStateModel make_degraded_model(const LatticeGeometry &lattice, const InputSpec &input, double target_o10_sq,
                                      double target_f_in) {
    check_sizes(lattice, input);
    if (!(target_o10_sq >= 0 && target_o10_sq <= 1) || !(target_f_in >= 0 && target_f_in <= 1)) {
        throw ValidationError("degraded-model targets must lie in [0, 1]");
    }
    constexpr double kTol = 1e-6;

    // F_in depends only on the tilt; 4|Tr rho O10|^2 only on eta.
    auto f_in_at = [&](double tilt) {
        return model_parameters(make_honest_model(lattice, input, NoiseModel{.input_tilt = tilt})).f_in;
    };
    double tilt = 0;
    if (target_f_in < 1) {
        if (f_in_at(std::numbers::pi) > target_f_in) {
            throw SearchError("input fidelity target unreachable");
        }
        tilt = bisect_decreasing(f_in_at, 0.0, std::numbers::pi, target_f_in);
    }

    auto o10_at = [&](double eta) {
        return model_parameters(make_honest_model(lattice, input, NoiseModel{.eta = eta, .input_tilt = tilt}))
            .o10_sq_scaled();
    };
    double eta = 0;
    if (target_o10_sq < 1) {
        double lo = 0;
        double hi = 1e-3;
        while (o10_at(hi) > target_o10_sq) {
            lo = hi;
            hi *= 2;
            if (hi > 4) {
                throw SearchError("propagation target unreachable");
            }
        }
        eta = bisect_decreasing(o10_at, lo, hi, target_o10_sq);
    }

    HistoryStateModel m = make_honest_model(lattice, input, NoiseModel{.eta = eta, .input_tilt = tilt});
    ExactParameters p = model_parameters(m);
    if (std::abs(p.o10_sq_scaled() - target_o10_sq) > kTol || std::abs(p.f_in - target_f_in) > kTol) {
        throw SearchError("degraded-model search did not converge to 1e-6");
    }
    return m;
}

PureState ideal_history_state(const LatticeGeometry &lattice, const InputSpec &input, double theta, double time) {
    PureState in = product_state(input);
    PureState out = apply_zz_evolution(in, lattice, time);
    return clock_superposition(in, out, std::polar(1.0, theta));
}

PureState echo_prepare(const LatticeGeometry &lattice, const InputSpec &input, double time) {
    check_sizes(lattice, input);
    size_t n = lattice.num_qubits();
    if (n > kMaxEchoQubits) {
        throw CapacityError("echo circuit simulation needs n <= " + std::to_string(kMaxEchoQubits));
    }
    PureState plus(std::vector<complex_t>{kInvSqrt2, kInvSqrt2});
    PureState state = tensor(plus, product_state(input));
    const size_t clock = n;

    std::vector<size_t> system(n);
    for (size_t k = 0; k < n; k++) {
        system[k] = k;
    }
    auto h = gates::hadamard();
    auto hadamard_b = [&] {
        for (uint32_t q : lattice.partition_b) {
            apply_single_qubit_inplace(state, q, h);
        }
    };

    // H_B . GCZ . H_B is CNOT_B from the clock (the Z on part A is undone by
    // the second application).
    hadamard_b();
    apply_global_cz_inplace(state, clock, system);
    hadamard_b();
    apply_zz_evolution_inplace(state, lattice, time / 2);
    hadamard_b();
    apply_global_cz_inplace(state, clock, system);
    hadamard_b();
    apply_single_qubit_inplace(state, clock, gates::pauli_x());
    apply_zz_evolution_inplace(state, lattice, time / 2);
    return state;
}

// ---- measurement instructions ---------------------------------------------

const char *mode_name(MeasurementMode mode) {
    switch (mode) {
        case MeasurementMode::SAMPLE:
            return "SAMPLE";
        case MeasurementMode::INPUT_TEST:
            return "INPUT_TEST";
        case MeasurementMode::PROP_TEST_X:
            return "PROP_TEST_X";
        case MeasurementMode::PROP_TEST_Y:
            return "PROP_TEST_Y";
    }
    return "?";
}

Basis MeasurementInstruction::clock_basis() const {
    switch (mode) {
        case MeasurementMode::PROP_TEST_X:
            return Basis::X;
        case MeasurementMode::PROP_TEST_Y:
            return Basis::Y;
        default:
            return Basis::Z;
    }
}

std::optional<int8_t> MeasurementInstruction::system_trigger() const {
    switch (mode) {
        case MeasurementMode::SAMPLE:
            return int8_t{-1};
        case MeasurementMode::INPUT_TEST:
            return int8_t{1};
        default:
            return std::nullopt;
    }
}

std::vector<Basis> MeasurementInstruction::system_bases(const InputSpec &input) const {
    std::vector<Basis> out(input.size(), Basis::Z);
    if (mode == MeasurementMode::SAMPLE) {
        std::fill(out.begin(), out.end(), Basis::X);
    } else if (mode == MeasurementMode::INPUT_TEST) {
        for (size_t k = 0; k < input.size(); k++) {
            out[k] = input.choices[k] == InputType::X_TYPE ? Basis::XROT : Basis::YROT;
        }
    }
    return out;
}

// ---- SimulatedProver ------------------------------------------------------

SimulatedProver::SimulatedProver(HistoryStateModel model, NoiseModel noise)
    : model_(std::move(model)), noise_(noise) {
    noise_.validate();
    size_t n = model_.num_system_qubits();
    if (n + 1 > 63) {
        throw CapacityError("packed outcomes hold at most 62 system qubits");
    }
    if (model_.stochastic_mixture.empty()) {
        model_.stochastic_mixture.push_back({1.0, model_.output_component});
    }
    const auto &in = model_.input_component;
    auto to_x = [](const PureState &s) { return walsh_hadamard(s); };
    auto to_rot = [&](const PureState &s) { return in_rotated_basis(s, model_.input); };

    sample_given_minus_ = Distribution::from_weights(mixture_probabilities(model_, to_x));
    sample_given_plus_ = Distribution::from_weights(born_probabilities(walsh_hadamard(in)));
    input_given_plus_ = Distribution::from_weights(born_probabilities(in_rotated_basis(in, model_.input)));
    input_given_minus_ = Distribution::from_weights(mixture_probabilities(model_, to_rot));

    // Joint clock/system statistics for the propagation tests. For a coherent
    // branch the clock outcome b in the X basis has amplitude
    // (phi(z) + b e^{i theta} phi'(z)) / 2; the Y basis adds a factor -i b.
    size_t dim = size_t{1} << n;
    complex_t phase = std::polar(1.0, model_.clock_phase);
    for (MeasurementMode mode : {MeasurementMode::PROP_TEST_X, MeasurementMode::PROP_TEST_Y}) {
        complex_t rot = mode == MeasurementMode::PROP_TEST_X ? complex_t{1, 0} : complex_t{0, -1};
        std::vector<double> joint(2 * dim, 0.0);
        for (const auto &branch : model_.stochastic_mixture) {
            for (size_t z = 0; z < dim; z++) {
                if (branch.output) {
                    complex_t cross = rot * phase * (*branch.output)[z];
                    joint[z] += branch.probability * 0.25 * std::norm(in[z] + cross);
                    joint[dim + z] += branch.probability * 0.25 * std::norm(in[z] - cross);
                } else {
                    double p = branch.probability * 0.25 * (std::norm(in[z]) + 1.0 / static_cast<double>(dim));
                    joint[z] += p;
                    joint[dim + z] += p;
                }
            }
        }
        (mode == MeasurementMode::PROP_TEST_X ? prop_x_ : prop_y_) = Distribution::from_weights(std::move(joint));
    }
}

const Distribution &SimulatedProver::propagation_distribution(MeasurementMode mode) const {
    return mode == MeasurementMode::PROP_TEST_Y ? prop_y_ : prop_x_;
}

const Distribution &SimulatedProver::conditional_distribution(MeasurementMode mode, int8_t clock) const {
    if (mode == MeasurementMode::SAMPLE) {
        return clock < 0 ? sample_given_minus_ : sample_given_plus_;
    }
    if (mode == MeasurementMode::INPUT_TEST) {
        return clock < 0 ? input_given_minus_ : input_given_plus_;
    }
    throw ValidationError("propagation tests use the joint distribution");
}

uint64_t SimulatedProver::flip_bits(uint64_t bits, size_t count, RandomStream &rng) const {
    for (size_t k = 0; k < count; k++) {
        if (rng.bernoulli(noise_.meas_flip)) {
            bits ^= uint64_t{1} << k;
        }
    }
    return bits;
}

PackedOutcome SimulatedProver::measure(const MeasurementInstruction &instruction, RandomStream &rng) const {
    const size_t n = model_.num_system_qubits();
    const bool noisy = noise_.meas_flip > 0;
    PackedOutcome out;
    if (auto trigger = instruction.system_trigger()) {
        int8_t true_clock = rng.bernoulli(p_clock_minus_) ? -1 : 1;
        out.clock = noisy && rng.bernoulli(noise_.meas_flip) ? static_cast<int8_t>(-true_clock) : true_clock;
        if (out.clock == *trigger) {
            out.system_measured = true;
            out.system_bits = conditional_distribution(instruction.mode, true_clock).sample(rng);
            if (noisy) {
                out.system_bits = flip_bits(out.system_bits, n, rng);
            }
        }
        return out;
    }
    uint64_t joint = propagation_distribution(instruction.mode).sample(rng);
    if (noisy) {
        joint = flip_bits(joint, n + 1, rng);
    }
    out.clock = (joint >> n) & 1 ? -1 : 1;
    out.system_measured = true;
    out.system_bits = joint & ((uint64_t{1} << n) - 1);
    return out;
}

MeasurementRecord measure_copy(const SimulatedProver &prover, const MeasurementInstruction &instruction,
                               RandomStream &rng) {
    PackedOutcome p = prover.measure(instruction, rng);
    MeasurementRecord rec;
    rec.basis_labels.push_back(instruction.clock_basis());
    rec.outcomes.push_back(p.clock);
    if (p.system_measured) {
        auto bases = instruction.system_bases(prover.model().input);
        for (size_t k = 0; k < bases.size(); k++) {
            rec.basis_labels.push_back(bases[k]);
            rec.outcomes.push_back((p.system_bits >> k) & 1 ? -1 : 1);
        }
    }
    return rec;
}

}  // namespace fklab
