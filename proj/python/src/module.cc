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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fklab/analysis.h"
#include "fklab/errors.h"
#include "fklab/io.h"
#include "fklab/prover.h"
#include "fklab/verifier.h"

namespace py = pybind11;
using namespace fklab;

namespace {

std::string run_protocol_json(uint32_t rows, uint32_t cols, const std::string &input, uint64_t num_copies,
                              uint64_t seed, const NoiseModel &noise, unsigned threads) {
    LatticeGeometry lattice = build_lattice(rows, cols);
    InputSpec in = input_from_string(input);
    SimulatedProver prover(make_honest_model(lattice, in, noise), noise);
    ProtocolConfig config;
    config.num_copies = num_copies;
    config.master_seed = seed;
    RunOptions options;
    options.threads = threads;
    EstimatorReport report;
    {
        py::gil_scoped_release release;
        report = run_protocol(prover, lattice, in, config, options).report;
    }
    return format_report(report);
}

}  // namespace

PYBIND11_MODULE(_fklab, m) {
    m.doc() = "fklab core bindings";

    py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
    py::register_exception<SearchError>(m, "SearchError", PyExc_RuntimeError);
    py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);

    py::class_<LatticeGeometry>(m, "Lattice")
        .def_readonly("rows", &LatticeGeometry::rows)
        .def_readonly("cols", &LatticeGeometry::cols)
        .def_readonly("edges", &LatticeGeometry::edges)
        .def_readonly("partition_b", &LatticeGeometry::partition_b)
        .def_property_readonly("num_qubits", &LatticeGeometry::num_qubits);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init([](double theta, double eta, double input_tilt, double meas_flip, double depolarizing) {
                 NoiseModel n{theta, eta, input_tilt, meas_flip, depolarizing};
                 n.validate();
                 return n;
             }),
             py::arg("theta") = 0.0, py::arg("eta") = 0.0, py::arg("input_tilt") = 0.0, py::arg("meas_flip") = 0.0,
             py::arg("depolarizing") = 0.0)
        .def_readwrite("theta", &NoiseModel::theta)
        .def_readwrite("eta", &NoiseModel::eta)
        .def_readwrite("input_tilt", &NoiseModel::input_tilt)
        .def_readwrite("meas_flip", &NoiseModel::meas_flip)
        .def_readwrite("depolarizing", &NoiseModel::depolarizing);

    py::class_<ExactParameters>(m, "ExactParameters")
        .def_readonly("f_in", &ExactParameters::f_in)
        .def_readonly("p_samp", &ExactParameters::p_samp)
        .def_readonly("tr_rho_o10", &ExactParameters::tr_rho_o10)
        .def_readonly("f_out", &ExactParameters::f_out)
        .def_readonly("purity", &ExactParameters::purity)
        .def_property_readonly("o10_sq_scaled", &ExactParameters::o10_sq_scaled);

    m.def("build_lattice", &build_lattice, py::arg("rows"), py::arg("cols"));

    m.def(
        "model_parameters",
        [](uint32_t rows, uint32_t cols, const std::string &input, const NoiseModel &noise) {
            LatticeGeometry g = build_lattice(rows, cols);
            return model_parameters(make_honest_model(g, input_from_string(input), noise));
        },
        py::arg("rows"), py::arg("cols"), py::arg("input"), py::arg("noise") = NoiseModel{});

    m.def(
        "degraded_parameters",
        [](uint32_t rows, uint32_t cols, const std::string &input, double target_o10_sq, double target_f_in) {
            LatticeGeometry g = build_lattice(rows, cols);
            return model_parameters(make_degraded_model(g, input_from_string(input), target_o10_sq, target_f_in));
        },
        py::arg("rows"), py::arg("cols"), py::arg("input"), py::arg("target_o10_sq"), py::arg("target_f_in"));

    m.def(
        "echo_fidelity",
        [](uint32_t rows, uint32_t cols, const std::string &input) {
            LatticeGeometry g = build_lattice(rows, cols);
            InputSpec in = input_from_string(input);
            if (g.num_qubits() > kMaxEchoQubits) {
                throw CapacityError("echo needs at most " + std::to_string(kMaxEchoQubits) + " qubits");
            }
            return state_fidelity(echo_prepare(g, in), ideal_history_state(g, in));
        },
        py::arg("rows"), py::arg("cols"), py::arg("input"));

    m.def(
        "u_value", [](uint64_t bits, const LatticeGeometry &g) { return u_value(bits, g); }, py::arg("bits"),
        py::arg("lattice"));

    m.def(
        "ideal_output_distribution",
        [](uint32_t rows, uint32_t cols, const std::string &input) {
            Distribution d = ideal_output_distribution(build_lattice(rows, cols), input_from_string(input));
            return std::vector<double>(d.probabilities().begin(), d.probabilities().end());
        },
        py::arg("rows"), py::arg("cols"), py::arg("input"));

    m.def("fidelity_lower_bound", &fidelity_lower_bound, py::arg("o10_sq"), py::arg("f_in"));
    m.def("tvd_fidelity_bound", &tvd_fidelity_bound, py::arg("f_out"));
    m.def("stochastic_trace_bound", &stochastic_trace_bound, py::arg("delta_f"), py::arg("delta_p"));
    m.def("hoeffding_bound", &hoeffding_bound, py::arg("delta"), py::arg("trials"), py::arg("sides"));
    m.def("completeness_rejection_bound", &completeness_rejection_bound, py::arg("num_copies"));

    m.def("_run_protocol", &run_protocol_json);
    m.def("_run_bound_suite", [](const std::string &suite, size_t instances, uint64_t seed) {
        std::vector<std::tuple<std::string, size_t, size_t, double>> rows;
        for (const auto &r : run_bound_suite(suite, instances, seed)) {
            rows.emplace_back(r.test_name, r.instances, r.violations, r.max_margin);
        }
        return rows;
    });
}
