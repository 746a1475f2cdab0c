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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "fklab/analysis.h"
#include "fklab/errors.h"

namespace fklab {

namespace {

struct Tally {
    BoundSuiteResult row;

    explicit Tally(std::string name) {
        row.test_name = std::move(name);
        row.max_margin = -std::numeric_limits<double>::infinity();
    }

    /// Records one check of lhs <= allowed.
    void check(double lhs, double allowed) {
        double margin = lhs - allowed;
        row.instances++;
        row.max_margin = std::max(row.max_margin, margin);
        if (!(margin <= 0)) {
            row.violations++;
        }
    }
};

Vector random_vector(Eigen::Index dim, RandomStream &rng) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        v[i] = complex_t{rng.normal(), rng.normal()};
    }
    return v.normalized();
}

/// Random rank-r density matrix G G^dagger / Tr with Gaussian G.
Matrix random_density(Eigen::Index dim, Eigen::Index rank, RandomStream &rng) {
    Matrix g(dim, rank);
    for (Eigen::Index i = 0; i < dim; i++) {
        for (Eigen::Index j = 0; j < rank; j++) {
            g(i, j) = complex_t{rng.normal(), rng.normal()};
        }
    }
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

Matrix random_hermitian(Eigen::Index dim, RandomStream &rng) {
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        for (Eigen::Index j = 0; j < dim; j++) {
            g(i, j) = complex_t{rng.normal(), rng.normal()};
        }
    }
    Matrix h = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return h / es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Random Hermitian generator (unit spectral norm) on qubits a and b of a
/// register of dimension dim, identity elsewhere.
Matrix random_two_qubit_generator(Eigen::Index dim, size_t a, size_t b, RandomStream &rng) {
    Matrix h4 = random_hermitian(4, rng);
    Matrix g = Matrix::Zero(dim, dim);
    const size_t mask = (size_t{1} << a) | (size_t{1} << b);
    auto sub = [&](size_t i) { return ((i >> a) & 1) | (((i >> b) & 1) << 1); };
    for (size_t i = 0; i < static_cast<size_t>(dim); i++) {
        size_t rest = i & ~mask;
        for (size_t s = 0; s < 4; s++) {
            size_t j = rest | ((s & 1) << a) | (((s >> 1) & 1) << b);
            g(i, j) = h4(sub(i), s);
        }
    }
    return g;
}

/// Small lattices (n <= 4) for dense experiments.
LatticeGeometry random_small_lattice(RandomStream &rng) {
    static const uint32_t shapes[][2] = {{1, 2}, {1, 3}, {2, 2}, {1, 4}};
    const auto &s = shapes[rng.below(4)];
    return build_lattice(s[0], s[1]);
}

Vector ideal_output(const LatticeGeometry &lattice, const InputSpec &input) {
    return dense::to_vector(apply_zz_evolution(product_state(input), lattice, 1));
}

std::vector<double> x_basis_probabilities(const Vector &v) {
    PureState s = walsh_hadamard(dense::to_state(v));
    std::vector<double> p(s.dim());
    for (size_t i = 0; i < s.dim(); i++) {
        p[i] = std::norm(s[i]);
    }
    return p;
}

BoundSuiteResult cauchy_schwarz_suite(size_t instances, RandomStream &rng) {
    Tally t("cauchy_schwarz");
    for (size_t k = 0; k < instances; k++) {
        LatticeGeometry lattice = random_small_lattice(rng);
        InputSpec input = random_input(lattice.num_qubits(), rng);
        Eigen::Index dim = Eigen::Index{2} << lattice.num_qubits();
        Matrix rho;
        switch (k % 3) {
            case 0:
                rho = random_density(dim, 1 + static_cast<Eigen::Index>(rng.below(dim)), rng);
                break;
            case 1: {
                Vector v = random_vector(dim, rng);
                rho = v * v.adjoint();
                break;
            }
            default: {
                // Ideal state with a little noise: close to saturation.
                Vector psi = dense::to_vector(ideal_history_state(lattice, input, 2 * std::numbers::pi * rng.uniform()));
                double q = 0.05 * rng.uniform();
                rho = (1 - q) * psi * psi.adjoint() + q * random_density(dim, dim, rng);
                break;
            }
        }
        ExactParameters p = exact_parameters(DensityMatrix(rho), lattice, input);
        t.check(std::norm(p.tr_rho_o10), 0.25 + 1e-10);
    }
    return t.row;
}

BoundSuiteResult lower_bound_suite(size_t instances, RandomStream &rng) {
    // Near-ideal states with eps, eps', eps'' <= 0.02; first-order bound
    // checked with slack 5e-3 for second-order terms.
    Tally t("lower_bound");
    constexpr double kRegime = 0.02;
    constexpr double kSlack = 5e-3;
    size_t accepted = 0;
    size_t attempts = 0;
    while (accepted < instances) {
        if (++attempts > 100 * instances + 1000) {
            throw SearchError("lower_bound suite could not sample enough near-ideal states");
        }
        LatticeGeometry lattice = random_small_lattice(rng);
        InputSpec input = random_input(lattice.num_qubits(), rng);
        Eigen::Index dim = Eigen::Index{2} << lattice.num_qubits();
        Vector psi = dense::to_vector(ideal_history_state(lattice, input, 2 * std::numbers::pi * rng.uniform()));
        // Coherent errors: random two-qubit rotations (clock included) of bounded angle.
        size_t total = lattice.num_qubits() + 1;
        size_t kicks = 1 + rng.below(3);
        for (size_t j = 0; j < kicks; j++) {
            size_t a = rng.below(total);
            size_t b = (a + 1 + rng.below(total - 1)) % total;
            Matrix g = random_two_qubit_generator(dim, a, b, rng);
            psi = dense::hermitian_propagator(g, 0.12 * rng.uniform()) * psi;
        }
        double q = 0.02 * rng.uniform();
        Matrix rho = (1 - q) * psi * psi.adjoint() + q * random_density(dim, 1 + rng.below(dim), rng);
        ExactParameters p = exact_parameters(DensityMatrix(rho), lattice, input);
        double eps = 0.25 - std::norm(p.tr_rho_o10);
        double eps_in = 1 - p.f_in;
        double eps_samp = std::abs(p.p_samp - 0.5);
        if (eps > kRegime || eps_in > kRegime || eps_samp > kRegime) {
            continue;
        }
        accepted++;
        t.check(fidelity_lower_bound(std::norm(p.tr_rho_o10), p.f_in), p.f_out + kSlack);
    }
    return t.row;
}

BoundSuiteResult tvd_chain_suite(size_t instances, RandomStream &rng) {
    Tally t("tvd_chain");
    for (size_t k = 0; k < instances; k++) {
        LatticeGeometry lattice = random_small_lattice(rng);
        InputSpec input = random_input(lattice.num_qubits(), rng);
        Vector ideal = ideal_output(lattice, input);
        double s = 2 * rng.uniform();
        Vector real = (ideal + s * random_vector(ideal.size(), rng)).normalized();
        double f_out = std::norm(ideal.dot(real));
        double d = tvd(x_basis_probabilities(real), x_basis_probabilities(ideal));
        t.check(d, tvd_fidelity_bound(f_out) + 1e-10);
    }
    return t.row;
}

BoundSuiteResult stochastic_suite(size_t instances, RandomStream &rng) {
    Tally t("stochastic");
    for (size_t k = 0; k < instances; k++) {
        LatticeGeometry lattice = random_small_lattice(rng);
        InputSpec input = random_input(lattice.num_qubits(), rng);
        Vector ideal = ideal_output(lattice, input);
        Eigen::Index dim = ideal.size();
        Matrix sigma = ideal * ideal.adjoint();
        Vector near = (ideal + rng.uniform() * random_vector(dim, rng)).normalized();
        double w = 0.5 + 0.5 * rng.uniform();
        Matrix rho = w * near * near.adjoint() + (1 - w) * random_density(dim, 1 + rng.below(dim), rng);
        double delta_f = std::clamp(1 - (ideal.adjoint() * rho * ideal)(0, 0).real(), 0.0, 1.0);
        double delta_p = std::clamp(1 - (rho * rho).trace().real(), 0.0, 1.0);
        double lhs = 0.5 * dense::trace_norm(rho - sigma);
        t.check(lhs, stochastic_trace_bound(delta_f, delta_p) + 1e-10);
    }
    return t.row;
}

std::vector<BoundSuiteResult> martingale_suite(size_t instances, RandomStream &rng) {
    std::vector<BoundSuiteResult> rows;
    const size_t reps = std::max<size_t>(instances, 200);
    for (auto scheme : {CorrelationScheme::IID, CorrelationScheme::ALTERNATING}) {
        for (size_t trials : {1000, 10000}) {
            std::string name = std::string("martingale_") + (scheme == CorrelationScheme::IID ? "iid" : "alternating") +
                               "_N" + std::to_string(trials);
            Tally t(name);
            MartingaleStats s = martingale_experiment(scheme, trials, 1.0, rng, reps);
            t.check(s.q99, std::min(s.gaussian_width, s.azuma_q99));
            t.row.instances = reps;
            rows.push_back(t.row);
        }
    }
    return rows;
}

BoundSuiteResult php_echo_suite(size_t instances, RandomStream &rng) {
    Tally t("php_echo");
    static const uint32_t shapes[][2] = {{1, 2}, {1, 3}, {2, 2}, {2, 3}, {1, 5}};
    for (size_t k = 0; k < instances; k++) {
        const auto &s = shapes[rng.below(5)];
        LatticeGeometry lattice = build_lattice(s[0], s[1]);
        size_t n = lattice.num_qubits();
        std::vector<PauliTerm> terms;
        PauliString p;
        if (k % 2 == 0) {
            terms = zz_terms(lattice);
            p = x_on_partition_b(lattice);
        } else {
            terms = xy_plus_z_terms(lattice);
            p.ops.assign(n, 'X');
            for (uint32_t q : lattice.partition_b) {
                p.ops[q] = 'Y';
            }
        }
        PureState input(n);
        {
            Vector v(Eigen::Index{1} << n);
            v.setZero();
            v[0] = 1;
            // Random product state: one random qubit state per site.
            PureState prod = dense::to_state(v);
            for (size_t q = 0; q < n; q++) {
                Vector a = random_vector(2, rng);
                Gate2x2 g{a[0], -std::conj(a[1]), a[1], std::conj(a[0])};
                prod = apply_single_qubit(std::move(prod), q, g);
            }
            input = prod;
        }
        double time = 2 * rng.uniform();
        PureState echo = generalized_echo_prepare(terms, p, input, time);
        PureState ref = dense_history_state(terms, input, time);
        t.check(1 - state_fidelity(echo, ref), 1e-10);
    }
    return t.row;
}

BoundSuiteResult noisy_meas_suite(size_t instances, RandomStream &rng) {
    Tally t("noisy_meas");
    LatticeGeometry lattice = build_lattice(2, 2);
    const size_t n = lattice.num_qubits();
    const double eps = 1.0 / (100.0 * static_cast<double>(n));
    for (size_t k = 0; k < instances; k++) {
        InputSpec input = random_input(n, rng);
        Vector ideal = ideal_output(lattice, input);
        Vector real = (ideal + 0.5 * rng.uniform() * random_vector(ideal.size(), rng)).normalized();
        double delta_f = std::clamp(1 - std::norm(ideal.dot(real)), 0.0, 1.0);
        std::vector<double> noisy = apply_flip_channel(x_basis_probabilities(real), eps);
        double d = tvd(noisy, x_basis_probabilities(ideal));
        t.check(d, noisy_measurement_tvd_bound(delta_f, eps, n) + 1e-10);
    }
    return t.row;
}

}  // namespace

const std::vector<std::string> &bound_suite_names() {
    static const std::vector<std::string> names = {"cauchy_schwarz", "lower_bound", "tvd_chain", "stochastic",
                                                   "martingale",     "php_echo",    "noisy_meas", "all"};
    return names;
}

std::vector<BoundSuiteResult> run_bound_suite(const std::string &suite, size_t instances, uint64_t seed) {
    const auto &names = bound_suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw ValidationError("unknown bound suite '" + suite + "'");
    }
    std::vector<BoundSuiteResult> rows;
    auto want = [&](const char *name) { return suite == "all" || suite == name; };
    if (want("cauchy_schwarz")) {
        RandomStream rng(seed, "cauchy_schwarz");
        rows.push_back(cauchy_schwarz_suite(instances, rng));
    }
    if (want("lower_bound")) {
        RandomStream rng(seed, "lower_bound");
        rows.push_back(lower_bound_suite(instances, rng));
    }
    if (want("tvd_chain")) {
        RandomStream rng(seed, "tvd_chain");
        rows.push_back(tvd_chain_suite(instances, rng));
    }
    if (want("stochastic")) {
        RandomStream rng(seed, "stochastic");
        rows.push_back(stochastic_suite(instances, rng));
    }
    if (want("martingale")) {
        RandomStream rng(seed, "martingale");
        for (auto &r : martingale_suite(instances, rng)) {
            rows.push_back(std::move(r));
        }
    }
    if (want("php_echo")) {
        RandomStream rng(seed, "php_echo");
        rows.push_back(php_echo_suite(instances, rng));
    }
    if (want("noisy_meas")) {
        RandomStream rng(seed, "noisy_meas");
        rows.push_back(noisy_meas_suite(instances, rng));
    }
    return rows;
}

void write_bound_csv(std::ostream &out, const std::vector<BoundSuiteResult> &rows) {
    out << "test_name,instances,violations,max_margin\n";
    char buf[64];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof(buf), "%.6e", r.max_margin);
        out << r.test_name << ',' << r.instances << ',' << r.violations << ',' << buf << '\n';
    }
}

}  // namespace fklab
