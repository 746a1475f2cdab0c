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

#ifndef FKLAB_ANALYSIS_H
#define FKLAB_ANALYSIS_H

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fklab/lattice.h"
#include "fklab/prover.h"
#include "fklab/rng.h"
#include "fklab/simulator.h"

namespace fklab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest register (clock included) the dense oracles accept.
inline constexpr size_t kMaxDenseQubits = 7;

/// Validated (n+1)-qubit density matrix, clock on the most significant qubit.
class DensityMatrix {
   public:
    /// Throws ValidationError unless Hermitian, unit trace and PSD (all within 1e-10).
    explicit DensityMatrix(Matrix m);
    static DensityMatrix from_pure(const PureState &state);

    size_t num_qubits() const { return num_qubits_; }
    const Matrix &matrix() const { return m_; }
    double purity() const;

   private:
    size_t num_qubits_ = 0;
    Matrix m_;
};

/// Density matrix of a history-state model (n <= 6).
DensityMatrix density_matrix(const HistoryStateModel &model);

namespace dense {

Vector to_vector(const PureState &s);
PureState to_state(const Vector &v);

/// Diagonal matrix of H = (pi/4) sum_edges Z_i Z_j.
Matrix zz_hamiltonian(const LatticeGeometry &lattice);
/// exp(-i time H) by the generic matrix exponential.
Matrix propagator_expm(const LatticeGeometry &lattice, double time = 1);
/// prod over edges of (cos(pi/4) I - i sin(pi/4) Z_i Z_j).
Matrix propagator_product_formula(const LatticeGeometry &lattice);
/// exp(-i t H) for Hermitian H through its eigendecomposition.
Matrix hermitian_propagator(const Matrix &h, double t);
/// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm(const Matrix &hermitian);

}  // namespace dense

/// Parameters of rho from its eigendecomposition: every eigenvector is split
/// into alpha|0>|phi> + beta|1>|phi'> and the defining sums are evaluated
/// with U = exp(-i H). Needs n = rho.num_qubits() - 1 <= 6.
ExactParameters exact_parameters(const DensityMatrix &rho, const LatticeGeometry &lattice, const InputSpec &input);

/// 16 |Tr rho O10|^2 + 3 F_in - 6, with o10_sq = |Tr rho O10|^2 (unscaled).
double fidelity_lower_bound(double o10_sq, double f_in);

/// 1/2 sum |p - q|.
double tvd(const Distribution &p, const Distribution &q);
double tvd(std::span<const double> p, std::span<const double> q);

/// sqrt(1 - f_out).
double tvd_fidelity_bound(double f_out);

/// delta_f + sqrt(delta_f - delta_f^2/2 - delta_p/2). The radicand is clamped
/// at 0 down to -1e-12; below that the inputs are inconsistent (RegimeError).
double stochastic_trace_bound(double delta_f, double delta_p);

/// sides * exp(-2 delta^2 trials), sides in {2, 4}.
double hoeffding_bound(double delta, double trials, int sides);

/// max{2 exp(-0.006^2 N/4), 4 exp(-0.0015^2 N/2)}: rejection probability of a
/// perfect prover with N/8 input-test and N/4 propagation copies.
double completeness_rejection_bound(double num_copies);

/// (1 - eps n) sqrt(delta_f) + eps n; RegimeError when eps n >= 1.
double noisy_measurement_tvd_bound(double delta_f, double eps, size_t n);

/// Applies independent bit-flip channels with rate eps to every bit of p.
std::vector<double> apply_flip_channel(std::span<const double> p, double eps);

// ---- correlated trials ----------------------------------------------------

enum class CorrelationScheme : uint8_t {
    IID,          ///< every trial measures the same state
    ALTERNATING,  ///< the state flips with the parity of earlier -1 outcomes
};

struct MartingaleStats {
    size_t trials = 0;
    size_t repetitions = 0;
    double beta = 0;
    double q50 = 0;
    double q90 = 0;
    double q99 = 0;
    double max_abs = 0;
    double gaussian_width = 0;  ///< 3.2 beta / sqrt(N)
    double azuma_q99 = 0;       ///< t with 2 exp(-t^2 N / (8 beta^2)) = 0.01
};

/// Tail of 2 exp(-t^2 N / (8 beta^2)) (Azuma with differences 2 beta / N).
double azuma_tail(double t, size_t trials, double beta);

/// Repeats a correlated-trial estimate of <A> for A = beta Z and records the
/// quantiles of |F - Tr(A tau)| with tau the average of the per-trial states.
MartingaleStats martingale_experiment(CorrelationScheme scheme, size_t trials, double beta, RandomStream &rng,
                                      size_t repetitions = 2000);

// ---- generalized echo -----------------------------------------------------

/// One character per qubit from {I, X, Y, Z}; qubit k is character k.
struct PauliString {
    std::string ops;

    /// Throws ValidationError on characters outside IXYZ.
    static PauliString parse(const std::string &text);
    size_t size() const { return ops.size(); }
    bool anticommutes_with(const PauliString &other) const;
};

struct PauliTerm {
    double coefficient = 1;
    PauliString pauli;
};

/// True iff p anticommutes with every term, i.e. P H P = -H.
bool php_negation_check(const std::vector<PauliTerm> &terms, const PauliString &p);

/// sum_{edges} (pi/4) Z_i Z_j as Pauli terms.
std::vector<PauliTerm> zz_terms(const LatticeGeometry &lattice);
/// sum_{edges} (X_i X_j + Y_i Y_j) + sum_i Z_i.
std::vector<PauliTerm> xy_plus_z_terms(const LatticeGeometry &lattice);
/// X on partition B, identity elsewhere.
PauliString x_on_partition_b(const LatticeGeometry &lattice);

namespace dense {
Matrix pauli_matrix(const PauliString &p);
Matrix hamiltonian_matrix(const std::vector<PauliTerm> &terms);
}  // namespace dense

/// exp(-iHT/2) X_clock CP exp(-iHT/2) CP on (|0>+|1>)|input>/sqrt(2), with CP
/// the clock-controlled P. Throws ValidationError (not invertible) if P does
/// not negate H.
PureState generalized_echo_prepare(const std::vector<PauliTerm> &terms, const PauliString &p, const PureState &input,
                                   double time);

/// (|0>|input> + |1> e^{-iHT}|input>)/sqrt(2) from the dense exponential.
PureState dense_history_state(const std::vector<PauliTerm> &terms, const PureState &input, double time);

// ---- property suites ------------------------------------------------------

struct BoundSuiteResult {
    std::string test_name;
    size_t instances = 0;
    size_t violations = 0;
    /// Largest (lhs - allowed) over all checks; <= 0 when nothing is violated.
    double max_margin = 0;
};

const std::vector<std::string> &bound_suite_names();

/// Runs one randomized bound suite. Throws ValidationError for unknown names.
std::vector<BoundSuiteResult> run_bound_suite(const std::string &suite, size_t instances, uint64_t seed);

void write_bound_csv(std::ostream &out, const std::vector<BoundSuiteResult> &rows);

}  // namespace fklab

#endif
