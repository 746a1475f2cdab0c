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

// Brute-force reference constructions for tests. Everything here is built
// from Kronecker products of 2x2 matrices so that it shares no code with the
// library kernels it checks.
#ifndef FKLAB_TESTS_ORACLES_H
#define FKLAB_TESTS_ORACLES_H

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "fklab/lattice.h"
#include "fklab/simulator.h"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline const cd I1{0, 1};

inline Mat eye2() { return Mat::Identity(2, 2); }
inline Mat px() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline Mat py() {
    Mat m(2, 2);
    m << 0, -I1, I1, 0;
    return m;
}
inline Mat pz() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
inline Mat had() {
    Mat m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

/// Operator acting with ops[k] on qubit k (qubit k = bit k of the index, so
/// the highest qubit is the leftmost Kronecker factor).
inline Mat kron_ops(const std::vector<Mat> &ops) {
    Mat out = Mat::Identity(1, 1);
    for (const auto &op : ops) {
        out = Eigen::kroneckerProduct(op, out).eval();
    }
    return out;
}

inline Mat single(size_t n, size_t q, const Mat &op) {
    std::vector<Mat> ops(n, eye2());
    ops[q] = op;
    return kron_ops(ops);
}

inline Vec kron_vec(const std::vector<Vec> &vs) {
    Vec out = Vec::Ones(1);
    for (const auto &v : vs) {
        out = Eigen::kroneckerProduct(v, out).eval();
    }
    return out;
}

/// Input qubit states written out from their definitions.
inline Vec x_state() {
    Vec v(2);
    v << cd(1, 1) / 2.0, cd(1, -1) / 2.0;
    return v;
}
inline Vec y_state() {
    Vec v(2);
    v << cd(1, 1) / 2.0, std::polar(1.0, -std::numbers::pi / 4) * cd(1, -1) / 2.0;
    return v;
}

inline Vec input_state(const fklab::InputSpec &input) {
    std::vector<Vec> vs;
    for (auto t : input.choices) {
        vs.push_back(t == fklab::InputType::X_TYPE ? x_state() : y_state());
    }
    return kron_vec(vs);
}

/// H = (pi/4) sum_edges Z_i Z_j as a dense matrix.
inline Mat hamiltonian(const fklab::LatticeGeometry &g) {
    size_t n = g.num_qubits();
    size_t d = size_t{1} << n;
    Mat h = Mat::Zero(d, d);
    for (const auto &[i, j] : g.edges) {
        h += (std::numbers::pi / 4) * single(n, i, pz()) * single(n, j, pz());
    }
    return h;
}

/// exp(-i t H) by the generic matrix exponential.
inline Mat propagator(const fklab::LatticeGeometry &g, double t = 1) {
    Mat a = cd(0, -t) * hamiltonian(g);
    return a.exp();
}

inline Mat hadamard_all(size_t n) { return kron_ops(std::vector<Mat>(n, had())); }

/// (|0>|in> + e^{i theta}|1>U|in>)/sqrt(2) with the clock as the top qubit.
inline Vec history_state(const fklab::LatticeGeometry &g, const fklab::InputSpec &input, double theta = 0) {
    Vec in = input_state(input);
    Vec out = propagator(g) * in;
    Vec v(2 * in.size());
    v << in, std::polar(1.0, theta) * out;
    return v / std::sqrt(2.0);
}

inline Vec to_vec(const fklab::PureState &s) {
    Vec v(static_cast<Eigen::Index>(s.dim()));
    for (size_t i = 0; i < s.dim(); i++) {
        v[static_cast<Eigen::Index>(i)] = s[i];
    }
    return v;
}

inline fklab::PureState to_state(const Vec &v) {
    return fklab::PureState(std::vector<cd>(v.data(), v.data() + v.size()));
}

inline double fidelity(const Vec &a, const Vec &b) { return std::norm(a.dot(b)); }

inline Vec random_vec(size_t dim, fklab::RandomStream &rng) {
    Vec v(static_cast<Eigen::Index>(dim));
    for (auto &x : v) {
        x = cd(rng.normal(), rng.normal());
    }
    return v.normalized();
}

/// Naive edge enumeration over all cell pairs.
inline std::vector<std::pair<uint32_t, uint32_t>> brute_edges(uint32_t rows, uint32_t cols) {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    uint32_t n = rows * cols;
    for (uint32_t a = 0; a < n; a++) {
        for (uint32_t b = a + 1; b < n; b++) {
            int dr = std::abs(static_cast<int>(a / cols) - static_cast<int>(b / cols));
            int dc = std::abs(static_cast<int>(a % cols) - static_cast<int>(b % cols));
            if (dr + dc == 1) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

}  // namespace oracle

namespace oracle {

inline Mat rz(double a) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = std::polar(1.0, -a / 2);
    m(1, 1) = std::polar(1.0, a / 2);
    return m;
}

/// Density matrix of an honest prover built from its definition: tilted
/// input, output evolved for 1 + eta from the tilted input, clock phase
/// theta, and a depolarized branch (1/2|0><0| x |in><in| + 1/2|1><1| x I/d).
inline Mat honest_rho(const fklab::LatticeGeometry &g, const fklab::InputSpec &input, double theta, double eta,
                      double tilt, double depol) {
    size_t n = g.num_qubits();
    Eigen::Index d = Eigen::Index{1} << n;
    Vec in = kron_ops(std::vector<Mat>(n, rz(tilt))) * input_state(input);
    Vec out = propagator(g, 1 + eta) * in;
    Vec psi(2 * d);
    psi << in, std::polar(1.0, theta) * out;
    psi /= std::sqrt(2.0);
    Mat rho = (1 - depol) * psi * psi.adjoint();
    rho.topLeftCorner(d, d) += depol * 0.5 * in * in.adjoint();
    rho.bottomRightCorner(d, d) += depol * 0.5 / static_cast<double>(d) * Mat::Identity(d, d);
    return rho;
}

struct Params {
    double f_in, p_samp, f_out, purity;
    cd tr;
};

/// Parameters through projectors on the full register:
///   F_in = <0,in|rho|0,in> / Tr rho_00, p_samp = Tr rho_11,
///   Tr rho O10 with O10 = |1><0| x U, F_out = <1,U in|rho|1,U in> / Tr rho_11.
inline Params direct_params(const Mat &rho, const fklab::LatticeGeometry &g, const fklab::InputSpec &input) {
    size_t n = g.num_qubits();
    Eigen::Index d = Eigen::Index{1} << n;
    Mat u = propagator(g);
    Vec in = input_state(input);
    Vec zero_in = Vec::Zero(2 * d), one_out = Vec::Zero(2 * d);
    zero_in.head(d) = in;
    one_out.tail(d) = u * in;
    Mat o10 = Mat::Zero(2 * d, 2 * d);
    o10.bottomLeftCorner(d, d) = u;
    Params p;
    double w0 = rho.topLeftCorner(d, d).trace().real();
    double w1 = rho.bottomRightCorner(d, d).trace().real();
    p.p_samp = w1;
    p.f_in = (zero_in.adjoint() * rho * zero_in)(0, 0).real() / w0;
    p.f_out = (one_out.adjoint() * rho * one_out)(0, 0).real() / w1;
    p.tr = (rho * o10).trace();
    p.purity = (rho * rho).trace().real();
    return p;
}

/// -1 eigenvector of the rotated basis for an input qubit state v.
inline Vec complement(const Vec &v) {
    Vec w(2);
    w << -std::conj(v[1]), std::conj(v[0]);
    return w;
}

/// Matrix whose rows are the bras of the rotated measurement basis of input.
inline Mat rotated_basis(const fklab::InputSpec &input) {
    std::vector<Mat> ops;
    for (auto t : input.choices) {
        Vec v = t == fklab::InputType::X_TYPE ? x_state() : y_state();
        Vec w = complement(v);
        Mat b(2, 2);
        b.row(0) = v.adjoint();
        b.row(1) = w.adjoint();
        ops.push_back(b);
    }
    return kron_ops(ops);
}

}  // namespace oracle

#endif
