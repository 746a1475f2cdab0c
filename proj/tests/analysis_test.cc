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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fklab/errors.h"
#include "oracles.h"

using namespace fklab;
using oracle::cd;
using oracle::Mat;
using oracle::Vec;

namespace {

Mat pauli_char(char c) {
    switch (c) {
        case 'X':
            return oracle::px();
        case 'Y':
            return oracle::py();
        case 'Z':
            return oracle::pz();
        default:
            return oracle::eye2();
    }
}

Mat oracle_pauli(const std::string &s) {
    std::vector<Mat> ops;
    for (char c : s) {
        ops.push_back(pauli_char(c));
    }
    return oracle::kron_ops(ops);
}

Mat random_density(size_t dim, size_t rank, RandomStream &rng) {
    Mat g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rank));
    for (Eigen::Index i = 0; i < g.rows(); i++) {
        for (Eigen::Index j = 0; j < g.cols(); j++) {
            g(i, j) = cd(rng.normal(), rng.normal());
        }
    }
    Mat rho = g * g.adjoint();
    return rho / rho.trace();
}

Mat random_unitary(Eigen::Index dim, RandomStream &rng) {
    Mat g(dim, dim);
    for (auto &x : g.reshaped()) {
        x = cd(rng.normal(), rng.normal());
    }
    return Eigen::HouseholderQR<Mat>(g).householderQ();
}

}  // namespace

// ---- density matrices -----------------------------------------------------

TEST(density_matrix, validation) {
    Mat m = Mat::Identity(4, 4) / 4.0;
    EXPECT_EQ(DensityMatrix(m).num_qubits(), 2u);
    EXPECT_NEAR(DensityMatrix(m).purity(), 0.25, 1e-15);
    Mat bad = m;
    bad(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix{bad}, ValidationError);
    EXPECT_THROW(DensityMatrix{Mat(Mat::Identity(4, 4))}, ValidationError);
    Mat neg = Mat::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix{neg}, ValidationError);
    EXPECT_THROW(DensityMatrix{Mat(Mat::Identity(3, 3) / 3.0)}, DimensionError);
    EXPECT_THROW(DensityMatrix{Mat(Mat::Identity(256, 256) / 256.0)}, CapacityError);
}

TEST(density_matrix, of_honest_model_matches_oracle) {
    LatticeGeometry g = build_lattice(2, 2);
    InputSpec in = input_from_string("XYYX");
    NoiseModel noise{.theta = 0.5, .eta = 0.04, .input_tilt = 0.1, .depolarizing = 0.3};
    DensityMatrix rho = density_matrix(make_honest_model(g, in, noise));
    Mat ref = oracle::honest_rho(g, in, 0.5, 0.04, 0.1, 0.3);
    EXPECT_NEAR((rho.matrix() - ref).norm(), 0, 1e-12);
}

// ---- exact parameters -----------------------------------------------------

TEST(exact_parameters, perfect_history_state) {
    LatticeGeometry g = build_lattice(2, 2);
    InputSpec in = input_from_string("YXYX");
    for (double theta : {0.0, 1.0, 2.5}) {
        DensityMatrix rho = DensityMatrix::from_pure(ideal_history_state(g, in, theta));
        ExactParameters p = exact_parameters(rho, g, in);
        EXPECT_NEAR(p.f_in, 1, 1e-12);
        EXPECT_NEAR(p.p_samp, 0.5, 1e-12);
        EXPECT_NEAR(std::norm(p.tr_rho_o10), 0.25, 1e-12);
        EXPECT_NEAR(p.f_out, 1, 1e-12);
        EXPECT_NEAR(p.purity, 1, 1e-12);
    }
}

TEST(exact_parameters, maximally_mixed) {
    LatticeGeometry g = build_lattice(1, 3);
    InputSpec in = input_from_string("XXY");
    ExactParameters p = exact_parameters(DensityMatrix(Mat::Identity(16, 16) / 16.0), g, in);
    EXPECT_NEAR(p.p_samp, 0.5, 1e-12);
    EXPECT_NEAR(std::abs(p.tr_rho_o10), 0, 1e-12);
    EXPECT_NEAR(p.f_in, 1.0 / 8, 1e-12);
    EXPECT_NEAR(p.f_out, 1.0 / 8, 1e-12);
    EXPECT_NEAR(p.purity, 1.0 / 16, 1e-12);
}

TEST(exact_parameters, random_states_match_projector_oracle) {
    RandomStream rng(21);
    for (auto [r, c] : {std::pair{1u, 2u}, {2u, 2u}, {1u, 5u}, {2u, 3u}}) {
        LatticeGeometry g = build_lattice(r, c);
        size_t dim = size_t{2} << g.num_qubits();
        for (size_t rank : {size_t{1}, size_t{3}, dim}) {
            InputSpec in = random_input(g.num_qubits(), rng);
            Mat m = random_density(dim, rank, rng);
            ExactParameters p = exact_parameters(DensityMatrix(m), g, in);
            oracle::Params q = oracle::direct_params(m, g, in);
            EXPECT_NEAR(p.f_in, q.f_in, 1e-10);
            EXPECT_NEAR(p.p_samp, q.p_samp, 1e-10);
            EXPECT_NEAR(std::abs(p.tr_rho_o10 - q.tr), 0, 1e-10);
            EXPECT_NEAR(p.f_out, q.f_out, 1e-10);
            EXPECT_NEAR(p.purity, (m * m).trace().real(), 1e-12);
        }
    }
}

TEST(exact_parameters, agree_with_model_parameters) {
    LatticeGeometry g = build_lattice(2, 3);
    InputSpec in = input_from_string("XYXXYY");
    NoiseModel noise{.theta = 0.3, .eta = 0.06, .input_tilt = 0.05, .depolarizing = 0.15};
    HistoryStateModel model = make_honest_model(g, in, noise);
    ExactParameters a = model_parameters(model);
    ExactParameters b = exact_parameters(density_matrix(model), g, in);
    EXPECT_NEAR(a.f_in, b.f_in, 1e-10);
    EXPECT_NEAR(a.p_samp, b.p_samp, 1e-10);
    EXPECT_NEAR(std::abs(a.tr_rho_o10 - b.tr_rho_o10), 0, 1e-10);
    EXPECT_NEAR(a.f_out, b.f_out, 1e-10);
    EXPECT_NEAR(a.purity, b.purity, 1e-10);
}

// Any orthonormal basis of a degenerate eigenspace gives the same sums.
TEST(exact_parameters, independent_of_degenerate_eigenbasis) {
    LatticeGeometry g = build_lattice(1, 3);
    InputSpec in = input_from_string("XYX");
    RandomStream rng(5);
    const Eigen::Index dim = 16;
    Mat v = random_unitary(dim, rng);
    std::vector<double> lambda(dim, 0.0);
    for (Eigen::Index k = 0; k < 3; k++) {
        lambda[k] = 0.2;
    }
    for (Eigen::Index k = 3; k < 7; k++) {
        lambda[k] = 0.1;
    }
    Mat rho = Mat::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; k++) {
        rho += lambda[k] * v.col(k) * v.col(k).adjoint();
    }
    ExactParameters lib = exact_parameters(DensityMatrix(rho), g, in);

    Mat u = oracle::propagator(g);
    Vec phi = oracle::input_state(in);
    Eigen::Index d = dim / 2;
    for (int trial = 0; trial < 3; trial++) {
        Mat w = v;
        w.middleCols(0, 3) = v.middleCols(0, 3) * random_unitary(3, rng);
        w.middleCols(3, 4) = v.middleCols(3, 4) * random_unitary(4, rng);
        double w0 = 0, w1 = 0, fin = 0, fout = 0;
        cd tr = 0;
        for (Eigen::Index k = 0; k < 7; k++) {
            Vec a = w.col(k).head(d), b = w.col(k).tail(d);
            w0 += lambda[k] * a.squaredNorm();
            w1 += lambda[k] * b.squaredNorm();
            fin += lambda[k] * std::norm(phi.dot(a));
            fout += lambda[k] * std::norm((u * phi).dot(b));
            tr += lambda[k] * b.dot(u * a);
        }
        EXPECT_NEAR(lib.f_in, fin / w0, 1e-10);
        EXPECT_NEAR(lib.p_samp, w1, 1e-10);
        EXPECT_NEAR(lib.f_out, fout / w1, 1e-10);
        EXPECT_NEAR(std::abs(lib.tr_rho_o10 - tr), 0, 1e-10);
    }
}

TEST(exact_parameters, rejects_oversized_lattice) {
    LatticeGeometry g = build_lattice(1, 2);
    EXPECT_THROW(exact_parameters(DensityMatrix(Mat::Identity(16, 16) / 16.0), g, input_from_string("XY")),
                 DimensionError);
}

// ---- dense helpers --------------------------------------------------------

TEST(dense, product_formula_matches_exponential) {
    for (uint32_t r = 1; r <= 6; r++) {
        for (uint32_t c = 1; r * c <= 6; c++) {
            if (r * c < 2) {
                continue;
            }
            LatticeGeometry g = build_lattice(r, c);
            Mat a = dense::propagator_product_formula(g);
            Mat b = dense::propagator_expm(g);
            EXPECT_NEAR((a - b).norm(), 0, 1e-10) << r << "x" << c;
            EXPECT_NEAR((b - oracle::propagator(g)).norm(), 0, 1e-10) << r << "x" << c;
        }
    }
}

TEST(dense, hermitian_propagator_and_trace_norm) {
    RandomStream rng(2);
    Mat h = random_density(8, 8, rng);
    Mat a = dense::hermitian_propagator(h, 0.7);
    Mat b = (cd(0, -0.7) * h).exp();
    EXPECT_NEAR((a - b).norm(), 0, 1e-10);
    Mat diff = Mat::Zero(2, 2);
    diff(0, 0) = 0.5;
    diff(1, 1) = -0.25;
    EXPECT_NEAR(dense::trace_norm(diff), 0.75, 1e-15);
}

TEST(dense, pauli_matrices) {
    for (const char *s : {"X", "YZ", "IXZ", "ZYXI"}) {
        EXPECT_NEAR((dense::pauli_matrix(PauliString::parse(s)) - oracle_pauli(s)).norm(), 0, 1e-15) << s;
    }
}

// ---- scalar bounds --------------------------------------------------------

TEST(fidelity_lower_bound, examples) {
    EXPECT_NEAR(fidelity_lower_bound(0.25, 1), 1, 1e-15);
    EXPECT_NEAR(fidelity_lower_bound(0.988 / 4, 0.988), 0.916, 1e-12);
    EXPECT_GE(fidelity_lower_bound(0.988 / 4, 0.988), 0.915);
    EXPECT_NEAR(fidelity_lower_bound(0.2, 1), 0.2, 1e-15);
}

// With |Tr rho O10|^2 = 1/4 - eps and F_in = 1 - eps'', the bound reads 1 - 16 eps - 3 eps''.
TEST(fidelity_lower_bound, first_order_form) {
    RandomStream rng(3);
    for (int k = 0; k < 1000; k++) {
        double eps = 0.02 * rng.uniform();
        double eps2 = 0.02 * rng.uniform();
        EXPECT_NEAR(fidelity_lower_bound(0.25 - eps, 1 - eps2), 1 - 16 * eps - 3 * eps2, 1e-12);
    }
}

TEST(tvd, examples) {
    Distribution p({0.25, 0.25, 0.5, 0});
    EXPECT_EQ(tvd(p, p), 0);
    EXPECT_DOUBLE_EQ(tvd(Distribution({1, 0}), Distribution({0, 1})), 1);
    EXPECT_THROW(tvd(Distribution({1, 0}), p), DimensionError);
}

TEST(tvd, perturbed_two_qubit_distribution) {
    LatticeGeometry g = build_lattice(1, 2);
    InputSpec in = input_from_string("XY");
    Distribution ideal = ideal_output_distribution(g, in);
    PureState late = walsh_hadamard(apply_zz_evolution(product_state(in), g, 1.1));
    Distribution real = Distribution::born(late);
    Vec a = oracle::hadamard_all(2) * oracle::propagator(g) * oracle::input_state(in);
    Vec b = oracle::hadamard_all(2) * oracle::propagator(g, 1.1) * oracle::input_state(in);
    double ref = 0;
    for (Eigen::Index z = 0; z < 4; z++) {
        ref += std::abs(std::norm(a[z]) - std::norm(b[z])) / 2;
    }
    EXPECT_GT(ref, 0);
    EXPECT_NEAR(tvd(ideal, real), ref, 1e-12);
}

TEST(tvd_fidelity_bound, examples) {
    EXPECT_EQ(tvd_fidelity_bound(1), 0);
    EXPECT_NEAR(tvd_fidelity_bound(0.915), 0.2915, 5e-5);
    EXPECT_LE(tvd_fidelity_bound(0.915), 0.292);
    EXPECT_EQ(tvd_fidelity_bound(0), 1);
    EXPECT_THROW(tvd_fidelity_bound(1.5), RegimeError);
}

TEST(stochastic_trace_bound, examples) {
    double df = 0.1;
    EXPECT_NEAR(stochastic_trace_bound(df, 0), df + std::sqrt(df - df * df / 2), 1e-15);
    EXPECT_NEAR(stochastic_trace_bound(0.292, 2 * 0.292 - 0.292 * 0.292), 0.292, 1e-12);
    EXPECT_NEAR(1 - stochastic_trace_bound(0.292, 2 * 0.292 - 0.292 * 0.292), 0.708, 1e-12);
    EXPECT_EQ(stochastic_trace_bound(0, 0), 0);
    EXPECT_THROW(stochastic_trace_bound(0.1, 0.5), RegimeError);
}

TEST(hoeffding_bound, examples) {
    EXPECT_NEAR(hoeffding_bound(0.006, 437500, 2), 2 * std::exp(-31.5), 1e-27);
    EXPECT_NEAR(hoeffding_bound(0.006, 437500, 2), 4.3e-14, 0.2e-14);
    EXPECT_NEAR(hoeffding_bound(0.006, 875000, 2), 2 * std::exp(-63.0), 1e-40);
    EXPECT_EQ(hoeffding_bound(1e6, 100, 4), 0);
    EXPECT_THROW(hoeffding_bound(0.1, 10, 3), ValidationError);
}

// The compound rejection probability of a perfect prover at 3.5e6 copies.
TEST(hoeffding_bound, completeness_compound) {
    double n = 3.5e6;
    double direct = std::max(2 * std::exp(-0.006 * 0.006 * n / 4), 4 * std::exp(-0.0015 * 0.0015 * n / 2));
    EXPECT_NEAR(completeness_rejection_bound(n), direct, 1e-15);
    EXPECT_NEAR(completeness_rejection_bound(n), 0.078, 0.002);
    EXPECT_LT(completeness_rejection_bound(n), 1.0 / 3);
}

TEST(noisy_measurement_tvd_bound, examples) {
    EXPECT_NEAR(noisy_measurement_tvd_bound(0.04, 0, 10), 0.2, 1e-15);
    EXPECT_NEAR(noisy_measurement_tvd_bound(0, 1.0 / 1600, 16), 0.01, 1e-15);
    EXPECT_THROW(noisy_measurement_tvd_bound(0.1, 0.1, 10), RegimeError);
}

TEST(noisy_measurement_tvd_bound, simulated_flip_noise) {
    LatticeGeometry g = build_lattice(2, 2);
    InputSpec in = input_from_string("XYYX");
    const double eps = 0.002;
    Distribution ideal = ideal_output_distribution(g, in);
    std::vector<double> noisy = apply_flip_channel(ideal.probabilities(), eps);
    // Oracle: explicit sum over flip patterns.
    std::vector<double> ref(16, 0.0);
    for (uint64_t z = 0; z < 16; z++) {
        for (uint64_t f = 0; f < 16; f++) {
            int k = std::popcount(f);
            ref[z ^ f] += ideal[z] * std::pow(eps, k) * std::pow(1 - eps, 4 - k);
        }
    }
    for (size_t z = 0; z < 16; z++) {
        EXPECT_NEAR(noisy[z], ref[z], 1e-15);
    }
    RandomStream rng(4);
    std::vector<double> hist(16, 0.0);
    const int shots = 200000;
    for (int s = 0; s < shots; s++) {
        uint64_t z = ideal.sample(rng);
        for (int q = 0; q < 4; q++) {
            if (rng.uniform() < eps) {
                z ^= uint64_t{1} << q;
            }
        }
        hist[z] += 1.0 / shots;
    }
    double bound = noisy_measurement_tvd_bound(0, eps, 4);
    EXPECT_LE(tvd(noisy, ideal.probabilities()), bound);
    EXPECT_LE(tvd(hist, ideal.probabilities()), bound + 0.01);
}

// ---- correlated trials ----------------------------------------------------

TEST(martingale, single_trial_deviation_at_most_two_beta) {
    RandomStream rng(1);
    for (auto scheme : {CorrelationScheme::IID, CorrelationScheme::ALTERNATING}) {
        MartingaleStats s = martingale_experiment(scheme, 1, 0.5, rng, 500);
        EXPECT_LE(s.max_abs, 1.0 + 1e-12);
    }
}

TEST(martingale, alternating_scheme_within_azuma_quantile) {
    RandomStream rng(2);
    MartingaleStats s = martingale_experiment(CorrelationScheme::ALTERNATING, 10000, 1, rng, 500);
    EXPECT_NEAR(s.azuma_q99, 0.01 * std::sqrt(8 * std::log(200.0)), 1e-12);
    EXPECT_NEAR(azuma_tail(s.azuma_q99, 10000, 1), 0.01, 1e-12);
    EXPECT_LE(s.q99, s.azuma_q99);
    EXPECT_LE(s.q99, s.gaussian_width);
    EXPECT_LE(s.q50, s.q90);
    EXPECT_LE(s.q90, s.q99);
}

TEST(martingale, iid_scheme_is_hoeffding_like) {
    RandomStream rng(3);
    MartingaleStats s = martingale_experiment(CorrelationScheme::IID, 1000, 1, rng, 1000);
    // Binomial +-1 with mean 0.3: std of F is sqrt(0.91 / N).
    EXPECT_NEAR(s.q50, 0.6745 * std::sqrt(0.91 / 1000), 0.005);
    EXPECT_LE(s.q99, s.gaussian_width);
}

TEST(martingale, rejects_unbounded_observable) {
    RandomStream rng(1);
    EXPECT_THROW(martingale_experiment(CorrelationScheme::IID, 10, 0, rng), ValidationError);
    EXPECT_THROW(martingale_experiment(CorrelationScheme::IID, 10, INFINITY, rng), ValidationError);
}

// ---- Pauli checks and the generalized echo --------------------------------

TEST(pauli_string, parse_and_commutation) {
    EXPECT_THROW(PauliString::parse("XQ"), ValidationError);
    EXPECT_TRUE(PauliString::parse("XI").anticommutes_with(PauliString::parse("ZZ")));
    EXPECT_FALSE(PauliString::parse("ZZ").anticommutes_with(PauliString::parse("XX")));
    EXPECT_TRUE(PauliString::parse("Y").anticommutes_with(PauliString::parse("Z")));
}

TEST(php_negation_check, examples) {
    std::vector<PauliTerm> zz{{1, PauliString::parse("ZZ")}};
    EXPECT_TRUE(php_negation_check(zz, PauliString::parse("XI")));
    EXPECT_FALSE(php_negation_check(zz, PauliString::parse("ZZ")));
    LatticeGeometry g = build_lattice(1, 2);
    EXPECT_TRUE(php_negation_check(xy_plus_z_terms(g), PauliString::parse("XY")));
    EXPECT_FALSE(php_negation_check(xy_plus_z_terms(g), PauliString::parse("XX")));
}

TEST(php_negation_check, agrees_with_dense_conjugation) {
    RandomStream rng(6);
    const char ops[] = "IXYZ";
    for (int k = 0; k < 200; k++) {
        std::vector<PauliTerm> terms;
        for (int t = 0; t < 3; t++) {
            std::string s;
            for (int q = 0; q < 3; q++) {
                s += ops[rng.below(4)];
            }
            terms.push_back({1 + rng.uniform(), PauliString::parse(s)});
        }
        std::string ps;
        for (int q = 0; q < 3; q++) {
            ps += ops[rng.below(4)];
        }
        Mat h = Mat::Zero(8, 8);
        for (const auto &t : terms) {
            h += t.coefficient * oracle_pauli(t.pauli.ops);
        }
        Mat p = oracle_pauli(ps);
        bool negates = (p * h * p + h).norm() < 1e-12;
        EXPECT_EQ(php_negation_check(terms, PauliString::parse(ps)), negates) << ps;
    }
}

TEST(php_negation_check, partition_x_negates_zz_lattice) {
    for (auto [r, c] : {std::pair{2u, 3u}, {3u, 3u}, {4u, 4u}}) {
        LatticeGeometry g = build_lattice(r, c);
        EXPECT_TRUE(php_negation_check(zz_terms(g), x_on_partition_b(g)));
    }
}

TEST(generalized_echo, zz_lattice_matches_history_state) {
    RandomStream rng(9);
    for (auto [r, c] : {std::pair{1u, 2u}, {2u, 2u}, {2u, 3u}}) {
        LatticeGeometry g = build_lattice(r, c);
        InputSpec in = random_input(g.num_qubits(), rng);
        PureState s = generalized_echo_prepare(zz_terms(g), x_on_partition_b(g), product_state(in), 1);
        EXPECT_GE(oracle::fidelity(oracle::to_vec(s), oracle::history_state(g, in)), 1 - 1e-10);
    }
}

TEST(generalized_echo, xy_plus_z_on_two_qubits) {
    LatticeGeometry g = build_lattice(1, 2);
    RandomStream rng(10);
    Vec phi = oracle::random_vec(4, rng);
    Mat h = oracle_pauli("XX") + oracle_pauli("YY") + oracle_pauli("ZI") + oracle_pauli("IZ");
    for (double t : {0.3, 1.0, 2.2}) {
        PureState s = generalized_echo_prepare(xy_plus_z_terms(g), PauliString::parse("XY"), oracle::to_state(phi), t);
        Vec ref(8);
        ref << phi, (cd(0, -t) * h).exp() * phi;
        ref /= std::sqrt(2.0);
        EXPECT_GE(oracle::fidelity(oracle::to_vec(s), ref), 1 - 1e-10) << t;
        EXPECT_GE(oracle::fidelity(oracle::to_vec(dense_history_state(xy_plus_z_terms(g), oracle::to_state(phi), t)),
                                   ref),
                  1 - 1e-10);
    }
}

TEST(generalized_echo, zero_time) {
    LatticeGeometry g = build_lattice(2, 2);
    RandomStream rng(11);
    Vec phi = oracle::random_vec(16, rng);
    PureState s = generalized_echo_prepare(zz_terms(g), x_on_partition_b(g), oracle::to_state(phi), 0);
    Vec ref(32);
    ref << phi, phi;
    ref /= std::sqrt(2.0);
    EXPECT_GE(oracle::fidelity(oracle::to_vec(s), ref), 1 - 1e-10);
}

TEST(generalized_echo, errors) {
    LatticeGeometry g = build_lattice(1, 2);
    PureState in = product_state(input_from_string("XX"));
    EXPECT_THROW(generalized_echo_prepare(zz_terms(g), PauliString::parse("ZZ"), in, 1), ValidationError);
    LatticeGeometry big = build_lattice(2, 4);
    InputSpec in8;
    in8.choices.assign(8, InputType::X_TYPE);
    EXPECT_THROW(generalized_echo_prepare(zz_terms(big), x_on_partition_b(big), product_state(in8), 1), CapacityError);
}

// ---- bound suites ---------------------------------------------------------

TEST(bound_suites, every_suite_has_no_violations) {
    for (const auto &name : bound_suite_names()) {
        for (const auto &row : run_bound_suite(name, 100, 12)) {
            EXPECT_EQ(row.violations, 0u) << row.test_name;
            EXPECT_LE(row.max_margin, 0) << row.test_name;
            EXPECT_GE(row.instances, 100u) << row.test_name;
        }
    }
}

TEST(bound_suites, deterministic_and_csv) {
    auto a = run_bound_suite("cauchy_schwarz", 50, 3);
    auto b = run_bound_suite("cauchy_schwarz", 50, 3);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].max_margin, b[0].max_margin);
    std::ostringstream csv;
    write_bound_csv(csv, a);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "test_name,instances,violations,max_margin");
    EXPECT_THROW(run_bound_suite("nope", 10, 0), ValidationError);
}
