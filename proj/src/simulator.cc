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

#include "fklab/simulator.h"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "fklab/errors.h"

namespace fklab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_qubit(const PureState &state, size_t q) {
    if (q >= state.num_qubits()) {
        throw DimensionError("qubit index " + std::to_string(q) + " out of range for " +
                             std::to_string(state.num_qubits()) + "-qubit state");
    }
}

size_t log2_exact(size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw DimensionError("state/distribution size must be a power of two");
    }
    return static_cast<size_t>(std::countr_zero(dim));
}

}  // namespace

// ---- PureState ------------------------------------------------------------

PureState::PureState(size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits > kMaxStateQubits + 1) {
        throw CapacityError("state of " + std::to_string(num_qubits) + " qubits exceeds the full-vector guard");
    }
    amps_.assign(size_t{1} << num_qubits, complex_t{0, 0});
    amps_[0] = 1;
}

PureState::PureState(std::vector<complex_t> amplitudes)
    : num_qubits_(log2_exact(amplitudes.size())), amps_(std::move(amplitudes)) {}

double PureState::norm_squared() const {
    double s = 0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

void PureState::check_normalized(double tol) const {
    double n2 = norm_squared();
    if (std::abs(n2 - 1) > tol) {
        throw ValidationError("state not normalized (norm^2 = " + std::to_string(n2) + ")");
    }
}

void PureState::normalize() {
    double n = std::sqrt(norm_squared());
    if (n == 0) {
        throw ValidationError("cannot normalize the zero vector");
    }
    for (auto &a : amps_) {
        a /= n;
    }
}

complex_t inner_product(const PureState &bra, const PureState &ket) {
    if (bra.dim() != ket.dim()) {
        throw DimensionError("inner product of states with different sizes");
    }
    complex_t s = 0;
    for (size_t i = 0; i < bra.dim(); i++) {
        s += std::conj(bra[i]) * ket[i];
    }
    return s;
}

double state_fidelity(const PureState &a, const PureState &b) {
    return std::norm(inner_product(a, b));
}

PureState tensor(const PureState &high, const PureState &low) {
    std::vector<complex_t> out(high.dim() * low.dim());
    for (size_t h = 0; h < high.dim(); h++) {
        for (size_t l = 0; l < low.dim(); l++) {
            out[h * low.dim() + l] = high[h] * low[l];
        }
    }
    return PureState(std::move(out));
}

// ---- Distribution ---------------------------------------------------------

Distribution::Distribution(std::vector<double> probabilities) : probs_(std::move(probabilities)) {
    num_bits_ = log2_exact(probs_.size());
    double total = 0;
    for (double p : probs_) {
        if (!(p >= 0)) {
            throw ValidationError("negative or NaN probability");
        }
        total += p;
    }
    if (std::abs(total - 1) > 1e-10) {
        throw ValidationError("probabilities sum to " + std::to_string(total));
    }
    build_alias();
}

Distribution Distribution::from_weights(std::vector<double> weights) {
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0)) {
            throw ValidationError("negative or NaN weight");
        }
        total += w;
    }
    if (total <= 0) {
        throw ValidationError("weights sum to zero");
    }
    for (double &w : weights) {
        w /= total;
    }
    return Distribution(std::move(weights));
}

Distribution Distribution::born(const PureState &state) {
    std::vector<double> p(state.dim());
    for (size_t i = 0; i < state.dim(); i++) {
        p[i] = std::norm(state[i]);
    }
    return Distribution(std::move(p));
}

void Distribution::build_alias() {
    size_t n = probs_.size();
    accept_.assign(n, 1.0);
    alias_.resize(n);
    std::vector<uint32_t> small;
    std::vector<uint32_t> large;
    std::vector<double> scaled(n);
    for (size_t i = 0; i < n; i++) {
        alias_[i] = static_cast<uint32_t>(i);
        scaled[i] = probs_[i] * static_cast<double>(n);
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        uint32_t s = small.back();
        small.pop_back();
        uint32_t l = large.back();
        accept_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // Leftovers are 1 up to rounding.
    for (uint32_t i : small) {
        accept_[i] = 1.0;
    }
    for (uint32_t i : large) {
        accept_[i] = 1.0;
    }
}

uint64_t Distribution::sample(RandomStream &rng) const {
    uint64_t column = rng.below(probs_.size());
    return rng.uniform() < accept_[column] ? column : alias_[column];
}

void Distribution::write_csv(std::ostream &out) const {
    out << "index,probability\n";
    char buf[64];
    for (size_t i = 0; i < probs_.size(); i++) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, probs_[i]);
        out << buf;
    }
}

const char *basis_name(Basis b) {
    switch (b) {
        case Basis::Z:
            return "Z";
        case Basis::X:
            return "X";
        case Basis::Y:
            return "Y";
        case Basis::XROT:
            return "XROT";
        case Basis::YROT:
            return "YROT";
    }
    return "?";
}

// ---- gates ----------------------------------------------------------------

namespace gates {

Gate2x2 identity() { return {1, 0, 0, 1}; }
Gate2x2 pauli_x() { return {0, 1, 1, 0}; }
Gate2x2 pauli_y() { return {0, complex_t{0, -1}, complex_t{0, 1}, 0}; }
Gate2x2 pauli_z() { return {1, 0, 0, -1}; }
Gate2x2 hadamard() { return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}; }

Gate2x2 rz(double angle) {
    return {std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2)};
}

Gate2x2 rotated_basis_change(InputType type) {
    auto v = input_amplitudes(type);
    auto w = input_complement_amplitudes(type);
    return {std::conj(v[0]), std::conj(v[1]), std::conj(w[0]), std::conj(w[1])};
}

Gate2x2 x_basis_change() { return hadamard(); }

Gate2x2 y_basis_change() {
    return {kInvSqrt2, complex_t{0, -kInvSqrt2}, kInvSqrt2, complex_t{0, kInvSqrt2}};
}

bool is_unitary(const Gate2x2 &g, double tol) {
    // G^dagger G == I
    complex_t a = std::conj(g[0]) * g[0] + std::conj(g[2]) * g[2];
    complex_t b = std::conj(g[0]) * g[1] + std::conj(g[2]) * g[3];
    complex_t d = std::conj(g[1]) * g[1] + std::conj(g[3]) * g[3];
    return std::abs(a - 1.0) <= tol && std::abs(b) <= tol && std::abs(d - 1.0) <= tol;
}

}  // namespace gates

// ---- kernels --------------------------------------------------------------

std::array<complex_t, 2> input_amplitudes(InputType type) {
    const complex_t zero_amp{0.5, 0.5};
    if (type == InputType::X_TYPE) {
        return {zero_amp, complex_t{0.5, -0.5}};
    }
    return {zero_amp, std::polar(1.0, -std::numbers::pi / 4) * complex_t{0.5, -0.5}};
}

std::array<complex_t, 2> input_complement_amplitudes(InputType type) {
    auto v = input_amplitudes(type);
    return {-std::conj(v[1]), std::conj(v[0])};
}

PureState product_state(const InputSpec &input) {
    size_t n = input.size();
    if (n > kMaxStateQubits) {
        throw CapacityError("product state of " + std::to_string(n) + " qubits exceeds the full-vector guard");
    }
    std::vector<complex_t> amps(size_t{1} << n);
    amps[0] = 1;
    // Grow one qubit at a time: qubit k doubles the populated prefix.
    for (size_t k = 0; k < n; k++) {
        auto a = input_amplitudes(input.choices[k]);
        size_t half = size_t{1} << k;
        for (size_t i = 0; i < half; i++) {
            amps[i + half] = amps[i] * a[1];
            amps[i] *= a[0];
        }
    }
    return PureState(std::move(amps));
}

std::vector<int8_t> zz_energy_table(const LatticeGeometry &lattice) {
    size_t n = lattice.num_qubits();
    if (n > kMaxStateQubits) {
        throw CapacityError("energy table of " + std::to_string(n) + " qubits exceeds the full-vector guard");
    }
    auto adj = lattice.adjacency();
    size_t dim = size_t{1} << n;
    std::vector<int8_t> energy(dim);
    energy[0] = static_cast<int8_t>(lattice.edges.size());
    for (size_t i = 1; i < dim; i++) {
        size_t h = static_cast<size_t>(std::bit_width(i)) - 1;
        size_t prev = i ^ (size_t{1} << h);
        int delta = 0;
        for (uint32_t j : adj[h]) {
            delta += ((i >> j) & 1) ? -1 : 1;  // z_j
        }
        energy[i] = static_cast<int8_t>(energy[prev] - 2 * delta);
    }
    return energy;
}

void apply_zz_evolution_inplace(PureState &state, const LatticeGeometry &lattice, double time, size_t offset) {
    size_t n = lattice.num_qubits();
    if (offset + n > state.num_qubits()) {
        throw DimensionError("lattice of " + std::to_string(n) + " qubits does not fit the " +
                             std::to_string(state.num_qubits()) + "-qubit state");
    }
    auto energy = zz_energy_table(lattice);
    int m = static_cast<int>(lattice.edges.size());
    std::vector<complex_t> phase(2 * m + 1);
    for (int s = -m; s <= m; s++) {
        phase[s + m] = std::polar(1.0, -time * (std::numbers::pi / 4) * s);
    }
    size_t mask = (size_t{1} << n) - 1;
    auto amps = state.amplitudes();
    for (size_t i = 0; i < amps.size(); i++) {
        amps[i] *= phase[energy[(i >> offset) & mask] + m];
    }
}

PureState apply_zz_evolution(PureState state, const LatticeGeometry &lattice, double time) {
    if (state.num_qubits() != lattice.num_qubits()) {
        throw DimensionError("state has " + std::to_string(state.num_qubits()) + " qubits but lattice has " +
                             std::to_string(lattice.num_qubits()));
    }
    apply_zz_evolution_inplace(state, lattice, time);
    return state;
}

void walsh_hadamard_inplace(PureState &state) {
    auto a = state.amplitudes();
    size_t dim = a.size();
    for (size_t len = 1; len < dim; len <<= 1) {
        for (size_t base = 0; base < dim; base += 2 * len) {
            for (size_t i = base; i < base + len; i++) {
                complex_t u = a[i];
                complex_t v = a[i + len];
                a[i] = (u + v) * kInvSqrt2;
                a[i + len] = (u - v) * kInvSqrt2;
            }
        }
    }
}

PureState walsh_hadamard(PureState state) {
    walsh_hadamard_inplace(state);
    return state;
}

void apply_single_qubit_inplace(PureState &state, size_t qubit, const Gate2x2 &gate) {
    check_qubit(state, qubit);
    if (!gates::is_unitary(gate)) {
        throw ValidationError("gate is not unitary");
    }
    auto a = state.amplitudes();
    size_t stride = size_t{1} << qubit;
    for (size_t base = 0; base < a.size(); base += 2 * stride) {
        for (size_t i = base; i < base + stride; i++) {
            complex_t u = a[i];
            complex_t v = a[i + stride];
            a[i] = gate[0] * u + gate[1] * v;
            a[i + stride] = gate[2] * u + gate[3] * v;
        }
    }
}

PureState apply_single_qubit(PureState state, size_t qubit, const Gate2x2 &gate) {
    apply_single_qubit_inplace(state, qubit, gate);
    return state;
}

void apply_global_cz_inplace(PureState &state, size_t control, std::span<const size_t> targets) {
    check_qubit(state, control);
    uint64_t tmask = 0;
    for (size_t t : targets) {
        check_qubit(state, t);
        if (t == control) {
            throw ValidationError("control qubit is also a target");
        }
        tmask |= uint64_t{1} << t;
    }
    auto a = state.amplitudes();
    uint64_t cbit = uint64_t{1} << control;
    for (size_t i = 0; i < a.size(); i++) {
        if ((i & cbit) && (std::popcount(i & tmask) & 1)) {
            a[i] = -a[i];
        }
    }
}

PureState apply_global_cz(PureState state, size_t control, std::span<const size_t> targets) {
    apply_global_cz_inplace(state, control, targets);
    return state;
}

Distribution ideal_output_distribution(const LatticeGeometry &lattice, const InputSpec &input) {
    check_sizes(lattice, input);
    if (lattice.num_qubits() > kMaxStateQubits) {
        throw CapacityError("ideal distribution needs n <= " + std::to_string(kMaxStateQubits));
    }
    PureState state = product_state(input);
    apply_zz_evolution_inplace(state, lattice, 1.0);
    walsh_hadamard_inplace(state);
    return Distribution::born(state);
}

uint64_t sample(const Distribution &dist, RandomStream &rng) { return dist.sample(rng); }

complex_t u_value(std::span<const int8_t> z_outcomes, const LatticeGeometry &lattice) {
    if (z_outcomes.size() != lattice.num_qubits()) {
        throw DimensionError("outcome list has " + std::to_string(z_outcomes.size()) + " entries but lattice has " +
                             std::to_string(lattice.num_qubits()) + " qubits");
    }
    const double c = std::cos(std::numbers::pi / 4);
    const double s = std::sin(std::numbers::pi / 4);
    complex_t u = 1;
    for (const auto &[i, j] : lattice.edges) {
        double h = static_cast<double>(z_outcomes[i] * z_outcomes[j]);
        u *= complex_t{c, -s * h};
    }
    return u;
}

complex_t u_value(uint64_t z_bits, const LatticeGeometry &lattice) {
    const double c = std::cos(std::numbers::pi / 4);
    const double s = std::sin(std::numbers::pi / 4);
    complex_t u = 1;
    for (const auto &[i, j] : lattice.edges) {
        double h = (((z_bits >> i) ^ (z_bits >> j)) & 1) ? -1.0 : 1.0;
        u *= complex_t{c, -s * h};
    }
    return u;
}

}  // namespace fklab
