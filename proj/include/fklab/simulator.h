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

#ifndef FKLAB_SIMULATOR_H
#define FKLAB_SIMULATOR_H

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fklab/lattice.h"
#include "fklab/rng.h"

namespace fklab {

using complex_t = std::complex<double>;
using Gate2x2 = std::array<complex_t, 4>;  ///< row-major {m00, m01, m10, m11}

/// Largest register the full-vector kernels accept.
inline constexpr size_t kMaxStateQubits = 26;

/// Dense state vector. Qubit k is bit k of the basis index; |0> maps to the
/// spin z = +1 and |1> to z = -1.
class PureState {
   public:
    PureState() = default;
    /// |0...0> on num_qubits qubits.
    explicit PureState(size_t num_qubits);
    explicit PureState(std::vector<complex_t> amplitudes);

    size_t num_qubits() const { return num_qubits_; }
    size_t dim() const { return amps_.size(); }
    std::span<complex_t> amplitudes() { return amps_; }
    std::span<const complex_t> amplitudes() const { return amps_; }
    complex_t &operator[](size_t i) { return amps_[i]; }
    const complex_t &operator[](size_t i) const { return amps_[i]; }

    double norm_squared() const;
    /// Throws ValidationError if |norm^2 - 1| > tol.
    void check_normalized(double tol = 1e-10) const;
    void normalize();

   private:
    size_t num_qubits_ = 0;
    std::vector<complex_t> amps_;
};

complex_t inner_product(const PureState &bra, const PureState &ket);
/// |<a|b>|^2, insensitive to global phase.
double state_fidelity(const PureState &a, const PureState &b);
/// a (x) b with `high` on the most significant qubits.
PureState tensor(const PureState &high, const PureState &low);

/// Discrete distribution over 2^num_bits outcomes with a Walker/Vose alias
/// table for O(1) draws.
class Distribution {
   public:
    Distribution() = default;
    /// Validates non-negativity and sum == 1 within 1e-10.
    explicit Distribution(std::vector<double> probabilities);
    /// Rescales non-negative weights to sum to one.
    static Distribution from_weights(std::vector<double> weights);
    /// |amplitude|^2 of a normalized state.
    static Distribution born(const PureState &state);

    size_t num_bits() const { return num_bits_; }
    size_t size() const { return probs_.size(); }
    std::span<const double> probabilities() const { return probs_; }
    double operator[](size_t i) const { return probs_[i]; }

    uint64_t sample(RandomStream &rng) const;

    /// "index,probability" rows.
    void write_csv(std::ostream &out) const;

   private:
    void build_alias();

    size_t num_bits_ = 0;
    std::vector<double> probs_;
    std::vector<double> accept_;
    std::vector<uint32_t> alias_;
};

enum class Basis : uint8_t { Z, X, Y, XROT, YROT };

const char *basis_name(Basis b);

/// Outcomes of one measured copy. Outcome bit k set means qubit k read -1.
struct MeasurementRecord {
    std::vector<Basis> basis_labels;
    std::vector<int8_t> outcomes;  ///< +1 / -1, same length as basis_labels
};

// ---- state kernels --------------------------------------------------------

PureState product_state(const InputSpec &input);
/// Single-qubit amplitudes of an input type.
std::array<complex_t, 2> input_amplitudes(InputType type);
/// Orthogonal complement used as the -1 element of the rotated basis.
std::array<complex_t, 2> input_complement_amplitudes(InputType type);

/// S(z) = sum over edges of z_i z_j for every basis index z.
std::vector<int8_t> zz_energy_table(const LatticeGeometry &lattice);

/// Multiplies amplitude z by exp(-i time (pi/4) S(z)).
PureState apply_zz_evolution(PureState state, const LatticeGeometry &lattice, double time);
/// Same, on the system register [offset, offset + lattice qubits) of a larger state.
void apply_zz_evolution_inplace(PureState &state, const LatticeGeometry &lattice, double time, size_t offset = 0);

/// H on every qubit via the in-place butterfly, O(n 2^n).
PureState walsh_hadamard(PureState state);
void walsh_hadamard_inplace(PureState &state);

/// Throws ValidationError unless the gate is unitary within 1e-10.
PureState apply_single_qubit(PureState state, size_t qubit, const Gate2x2 &gate);
void apply_single_qubit_inplace(PureState &state, size_t qubit, const Gate2x2 &gate);

/// Multiplies each amplitude by (-1)^{c * |targets in |1>|}, c the control bit.
PureState apply_global_cz(PureState state, size_t control, std::span<const size_t> targets);
void apply_global_cz_inplace(PureState &state, size_t control, std::span<const size_t> targets);

/// P_ideal(x) = |<x| H^n U |phi_in>|^2 with U = exp(-i H), n <= 26.
Distribution ideal_output_distribution(const LatticeGeometry &lattice, const InputSpec &input);

uint64_t sample(const Distribution &dist, RandomStream &rng);

/// prod over edges of (cos(pi/4) - i sin(pi/4) z_i z_j).
complex_t u_value(std::span<const int8_t> z_outcomes, const LatticeGeometry &lattice);
/// Same, with z packed as bits (bit k set means z_k = -1).
complex_t u_value(uint64_t z_bits, const LatticeGeometry &lattice);

namespace gates {
Gate2x2 identity();
Gate2x2 pauli_x();
Gate2x2 pauli_y();
Gate2x2 pauli_z();
Gate2x2 hadamard();
Gate2x2 rz(double angle);
/// Maps |input>, |input_perp> to |0>, |1>.
Gate2x2 rotated_basis_change(InputType type);
/// Maps the X (Y) eigenbasis to the computational basis, +1 -> |0>.
Gate2x2 x_basis_change();
Gate2x2 y_basis_change();
bool is_unitary(const Gate2x2 &g, double tol = 1e-10);
}  // namespace gates

}  // namespace fklab

#endif
