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

#include "fklab/analysis.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "fklab/errors.h"

namespace fklab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

size_t qubits_of(Eigen::Index dim) {
    size_t d = static_cast<size_t>(dim);
    if (d == 0 || (d & (d - 1)) != 0) {
        throw DimensionError("matrix dimension must be a power of two");
    }
    return static_cast<size_t>(std::countr_zero(d));
}

}  // namespace

// ---- DensityMatrix --------------------------------------------------------

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw DimensionError("density matrix must be square");
    }
    num_qubits_ = qubits_of(m_.rows());
    if (num_qubits_ > kMaxDenseQubits) {
        throw CapacityError("density matrices are limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw ValidationError("density matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - 1.0) > 1e-10) {
        throw ValidationError("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw ValidationError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState &state) {
    Vector v = dense::to_vector(state);
    return DensityMatrix(v * v.adjoint());
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

DensityMatrix density_matrix(const HistoryStateModel &model) {
    size_t n = model.num_system_qubits();
    if (n + 1 > kMaxDenseQubits) {
        throw CapacityError("model too large for a dense density matrix");
    }
    size_t d = size_t{1} << n;
    Matrix rho = Matrix::Zero(2 * d, 2 * d);
    Vector in = dense::to_vector(model.input_component);
    complex_t phase = std::polar(1.0, model.clock_phase);
    for (const auto &b : model.stochastic_mixture) {
        if (b.output) {
            Vector psi(2 * d);
            psi.head(d) = in * kInvSqrt2;
            psi.tail(d) = dense::to_vector(*b.output) * (phase * kInvSqrt2);
            rho += b.probability * psi * psi.adjoint();
        } else {
            rho.topLeftCorner(d, d) += b.probability * 0.5 * in * in.adjoint();
            rho.bottomRightCorner(d, d) += Matrix::Identity(d, d) * (b.probability * 0.5 / static_cast<double>(d));
        }
    }
    return DensityMatrix(rho);
}

// ---- dense helpers --------------------------------------------------------

namespace dense {

Vector to_vector(const PureState &s) {
    Vector v(static_cast<Eigen::Index>(s.dim()));
    for (size_t i = 0; i < s.dim(); i++) {
        v[static_cast<Eigen::Index>(i)] = s[i];
    }
    return v;
}

PureState to_state(const Vector &v) {
    return PureState(std::vector<complex_t>(v.data(), v.data() + v.size()));
}

Matrix zz_hamiltonian(const LatticeGeometry &lattice) {
    size_t n = lattice.num_qubits();
    if (n > kMaxDenseQubits) {
        throw CapacityError("dense Hamiltonian limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    size_t d = size_t{1} << n;
    Matrix h = Matrix::Zero(d, d);
    for (size_t z = 0; z < d; z++) {
        double s = 0;
        for (const auto &[i, j] : lattice.edges) {
            s += (((z >> i) ^ (z >> j)) & 1) ? -1.0 : 1.0;
        }
        h(z, z) = std::numbers::pi / 4 * s;
    }
    return h;
}

Matrix propagator_expm(const LatticeGeometry &lattice, double time) {
    Matrix a = complex_t{0, -time} * zz_hamiltonian(lattice);
    return a.exp();
}

Matrix propagator_product_formula(const LatticeGeometry &lattice) {
    size_t n = lattice.num_qubits();
    size_t d = size_t{1} << n;
    const double c = std::cos(std::numbers::pi / 4);
    const double s = std::sin(std::numbers::pi / 4);
    Matrix u = Matrix::Identity(d, d);
    for (const auto &[i, j] : lattice.edges) {
        std::string ops(n, 'I');
        ops[i] = 'Z';
        ops[j] = 'Z';
        Matrix hk = pauli_matrix(PauliString{ops});
        u = u * (c * Matrix::Identity(d, d) - complex_t{0, s} * hk);
    }
    return u;
}

Matrix hermitian_propagator(const Matrix &h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases = (complex_t{0, -t} * es.eigenvalues().cast<complex_t>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double trace_norm(const Matrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

Matrix pauli_matrix(const PauliString &p) {
    size_t n = p.size();
    size_t d = size_t{1} << n;
    Matrix m = Matrix::Zero(d, d);
    // Column z maps to row z ^ xmask with a phase from the Y and Z factors.
    for (size_t z = 0; z < d; z++) {
        size_t row = z;
        complex_t amp = 1;
        for (size_t k = 0; k < n; k++) {
            bool bit = (z >> k) & 1;
            switch (p.ops[k]) {
                case 'X':
                    row ^= size_t{1} << k;
                    break;
                case 'Y':
                    row ^= size_t{1} << k;
                    amp *= bit ? complex_t{0, -1} : complex_t{0, 1};
                    break;
                case 'Z':
                    amp *= bit ? -1.0 : 1.0;
                    break;
                default:
                    break;
            }
        }
        m(row, z) = amp;
    }
    return m;
}

Matrix hamiltonian_matrix(const std::vector<PauliTerm> &terms) {
    if (terms.empty()) {
        throw ValidationError("empty Hamiltonian");
    }
    size_t n = terms.front().pauli.size();
    if (n > kMaxDenseQubits) {
        throw CapacityError("dense Hamiltonian limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    size_t d = size_t{1} << n;
    Matrix h = Matrix::Zero(d, d);
    for (const auto &t : terms) {
        if (t.pauli.size() != n) {
            throw ValidationError("malformed term: Pauli strings of different lengths");
        }
        h += t.coefficient * pauli_matrix(t.pauli);
    }
    return h;
}

}  // namespace dense

// ---- exact parameters -----------------------------------------------------

ExactParameters exact_parameters(const DensityMatrix &rho, const LatticeGeometry &lattice, const InputSpec &input) {
    check_sizes(lattice, input);
    size_t n = lattice.num_qubits();
    if (rho.num_qubits() != n + 1) {
        throw DimensionError("density matrix must cover the clock plus the lattice");
    }
    if (n + 1 > kMaxDenseQubits) {
        throw CapacityError("exact parameters limited to 6 system qubits");
    }
    const Eigen::Index d = Eigen::Index{1} << n;
    Matrix u = dense::propagator_expm(lattice);
    Vector phi_in = dense::to_vector(product_state(input));
    Vector u_phi_in = u * phi_in;

    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    // With a_i = alpha_i |phi_i> and b_i = beta_i |phi'_i> (unnormalized blocks):
    //   p_samp   = sum p_i |b_i|^2
    //   F_in     = sum p_i |<phi_in|a_i>|^2 / sum p_i |a_i|^2
    //   Tr rhoO10 = sum p_i <b_i|U|a_i>
    //   F_out    = sum p_i |<b_i|U|phi_in>|^2 / sum p_i |b_i|^2
    double w_alpha = 0, w_beta = 0, f_in_num = 0, f_out_num = 0, purity = 0;
    complex_t tr = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); i++) {
        double p = std::max(0.0, es.eigenvalues()[i]);
        if (p == 0) {
            continue;
        }
        Vector psi = es.eigenvectors().col(i);
        Vector a = psi.head(d);
        Vector b = psi.tail(d);
        w_alpha += p * a.squaredNorm();
        w_beta += p * b.squaredNorm();
        f_in_num += p * std::norm(phi_in.dot(a));
        f_out_num += p * std::norm(b.dot(u_phi_in));
        tr += p * b.dot(u * a);
        purity += p * p;
    }
    ExactParameters out;
    out.p_samp = w_beta;
    out.f_in = w_alpha > 0 ? f_in_num / w_alpha : 0;
    out.f_out = w_beta > 0 ? f_out_num / w_beta : 0;
    out.tr_rho_o10 = tr;
    out.purity = purity;
    return out;
}

// ---- scalar bounds --------------------------------------------------------

double fidelity_lower_bound(double o10_sq, double f_in) { return 16 * o10_sq + 3 * f_in - 6; }

double tvd(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw DimensionError("TVD of distributions with different supports");
    }
    double s = 0;
    for (size_t i = 0; i < p.size(); i++) {
        s += std::abs(p[i] - q[i]);
    }
    return 0.5 * s;
}

double tvd(const Distribution &p, const Distribution &q) { return tvd(p.probabilities(), q.probabilities()); }

double tvd_fidelity_bound(double f_out) {
    if (!(f_out >= -1e-12 && f_out <= 1 + 1e-12)) {
        throw RegimeError("output fidelity must lie in [0, 1]");
    }
    return std::sqrt(std::clamp(1 - f_out, 0.0, 1.0));
}

double stochastic_trace_bound(double delta_f, double delta_p) {
    if (!(delta_f >= 0 && delta_f <= 1) || !(delta_p >= 0 && delta_p <= 1)) {
        throw RegimeError("infidelity and impurity must lie in [0, 1]");
    }
    double radicand = delta_f - delta_f * delta_f / 2 - delta_p / 2;
    if (radicand < -1e-12) {
        throw RegimeError("impurity exceeds what the fidelity permits");
    }
    return delta_f + std::sqrt(std::max(0.0, radicand));
}

double hoeffding_bound(double delta, double trials, int sides) {
    if (!(delta > 0) || !(trials >= 1)) {
        throw ValidationError("hoeffding_bound needs delta > 0 and trials >= 1");
    }
    if (sides != 2 && sides != 4) {
        throw ValidationError("hoeffding_bound sides must be 2 or 4");
    }
    return sides * std::exp(-2 * delta * delta * trials);
}

double completeness_rejection_bound(double num_copies) {
    return std::max(hoeffding_bound(0.006, num_copies / 8, 2), hoeffding_bound(0.0015, num_copies / 4, 4));
}

double noisy_measurement_tvd_bound(double delta_f, double eps, size_t n) {
    double en = eps * static_cast<double>(n);
    if (!(en < 1) || eps < 0) {
        throw RegimeError("noisy-measurement bound needs 0 <= eps * n < 1");
    }
    if (!(delta_f >= 0 && delta_f <= 1)) {
        throw RegimeError("infidelity must lie in [0, 1]");
    }
    return (1 - en) * std::sqrt(delta_f) + en;
}

std::vector<double> apply_flip_channel(std::span<const double> p, double eps) {
    std::vector<double> cur(p.begin(), p.end());
    size_t dim = cur.size();
    for (size_t bit = 1; bit < dim; bit <<= 1) {
        for (size_t i = 0; i < dim; i++) {
            if ((i & bit) == 0) {
                double a = cur[i];
                double b = cur[i | bit];
                cur[i] = (1 - eps) * a + eps * b;
                cur[i | bit] = eps * a + (1 - eps) * b;
            }
        }
    }
    return cur;
}

// ---- correlated trials ----------------------------------------------------

double azuma_tail(double t, size_t trials, double beta) {
    return 2 * std::exp(-t * t * static_cast<double>(trials) / (8 * beta * beta));
}

MartingaleStats martingale_experiment(CorrelationScheme scheme, size_t trials, double beta, RandomStream &rng,
                                      size_t repetitions) {
    if (!(beta > 0) || !std::isfinite(beta)) {
        throw ValidationError("observable bound beta must be positive and finite");
    }
    if (trials == 0 || repetitions == 0) {
        throw ValidationError("martingale experiment needs trials and repetitions");
    }
    // Per-trial state sigma_j is fixed by its Z expectation m_j; the outcome
    // F_j = +-beta has mean beta m_j.
    constexpr double kIidBias = 0.3;
    constexpr double kSwing = 0.6;
    std::vector<double> dev(repetitions);
    for (size_t r = 0; r < repetitions; r++) {
        double sum_f = 0;
        double sum_mean = 0;
        bool parity = false;
        for (size_t j = 0; j < trials; j++) {
            double m = scheme == CorrelationScheme::IID ? kIidBias : (parity ? -kSwing : kSwing);
            bool minus = rng.uniform() < 0.5 * (1 - m);
            sum_f += minus ? -beta : beta;
            sum_mean += beta * m;
            parity ^= minus;
        }
        dev[r] = std::abs(sum_f - sum_mean) / static_cast<double>(trials);
    }
    std::sort(dev.begin(), dev.end());
    auto quantile = [&](double q) {
        size_t idx = static_cast<size_t>(std::ceil(q * static_cast<double>(repetitions))) - 1;
        return dev[std::min(idx, repetitions - 1)];
    };
    MartingaleStats s;
    s.trials = trials;
    s.repetitions = repetitions;
    s.beta = beta;
    s.q50 = quantile(0.5);
    s.q90 = quantile(0.9);
    s.q99 = quantile(0.99);
    s.max_abs = dev.back();
    double sqrt_n = std::sqrt(static_cast<double>(trials));
    s.gaussian_width = 3.2 * beta / sqrt_n;
    s.azuma_q99 = beta * std::sqrt(8 * std::log(200.0)) / sqrt_n;
    return s;
}

// ---- Pauli strings and the generalized echo -------------------------------

PauliString PauliString::parse(const std::string &text) {
    for (char c : text) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw ValidationError(std::string("malformed Pauli string: '") + c + "'");
        }
    }
    return PauliString{text};
}

bool PauliString::anticommutes_with(const PauliString &other) const {
    if (other.size() != size()) {
        throw ValidationError("malformed term: Pauli strings of different lengths");
    }
    size_t clashes = 0;
    for (size_t k = 0; k < ops.size(); k++) {
        if (ops[k] != 'I' && other.ops[k] != 'I' && ops[k] != other.ops[k]) {
            clashes++;
        }
    }
    return clashes % 2 == 1;
}

bool php_negation_check(const std::vector<PauliTerm> &terms, const PauliString &p) {
    PauliString::parse(p.ops);
    for (const auto &t : terms) {
        PauliString::parse(t.pauli.ops);
        if (!p.anticommutes_with(t.pauli)) {
            return false;
        }
    }
    return !terms.empty();
}

std::vector<PauliTerm> zz_terms(const LatticeGeometry &lattice) {
    std::vector<PauliTerm> out;
    size_t n = lattice.num_qubits();
    for (const auto &[i, j] : lattice.edges) {
        std::string ops(n, 'I');
        ops[i] = 'Z';
        ops[j] = 'Z';
        out.push_back({std::numbers::pi / 4, PauliString{ops}});
    }
    return out;
}

std::vector<PauliTerm> xy_plus_z_terms(const LatticeGeometry &lattice) {
    std::vector<PauliTerm> out;
    size_t n = lattice.num_qubits();
    for (const auto &[i, j] : lattice.edges) {
        for (char c : {'X', 'Y'}) {
            std::string ops(n, 'I');
            ops[i] = c;
            ops[j] = c;
            out.push_back({1.0, PauliString{ops}});
        }
    }
    for (size_t k = 0; k < n; k++) {
        std::string ops(n, 'I');
        ops[k] = 'Z';
        out.push_back({1.0, PauliString{ops}});
    }
    return out;
}

PauliString x_on_partition_b(const LatticeGeometry &lattice) {
    std::string ops(lattice.num_qubits(), 'I');
    for (uint32_t q : lattice.partition_b) {
        ops[q] = 'X';
    }
    return PauliString{ops};
}

PureState generalized_echo_prepare(const std::vector<PauliTerm> &terms, const PauliString &p, const PureState &input,
                                   double time) {
    if (p.size() != input.num_qubits()) {
        throw DimensionError("P and the input state act on different registers");
    }
    if (input.num_qubits() + 1 > kMaxDenseQubits) {
        throw CapacityError("generalized echo limited to 6 system qubits");
    }
    if (!php_negation_check(terms, p)) {
        throw ValidationError("not invertible: P does not anticommute with every term of H");
    }
    const Eigen::Index d = Eigen::Index{1} << input.num_qubits();
    Matrix half = dense::hermitian_propagator(dense::hamiltonian_matrix(terms), time / 2);
    Matrix pm = dense::pauli_matrix(p);
    Vector in = dense::to_vector(input);

    Vector c0 = in * kInvSqrt2;  // clock |0> block
    Vector c1 = in * kInvSqrt2;  // clock |1> block
    c1 = pm * c1;                // CP
    c0 = half * c0;
    c1 = half * c1;
    c1 = pm * c1;  // CP
    std::swap(c0, c1);  // X on the clock
    c0 = half * c0;
    c1 = half * c1;

    Vector out(2 * d);
    out.head(d) = c0;
    out.tail(d) = c1;
    return dense::to_state(out);
}

PureState dense_history_state(const std::vector<PauliTerm> &terms, const PureState &input, double time) {
    const Eigen::Index d = Eigen::Index{1} << input.num_qubits();
    Matrix h = dense::hamiltonian_matrix(terms);
    Matrix u = (complex_t{0, -time} * h).exp();
    Vector in = dense::to_vector(input);
    Vector out(2 * d);
    out.head(d) = in * kInvSqrt2;
    out.tail(d) = u * in * kInvSqrt2;
    return dense::to_state(out);
}

}  // namespace fklab
