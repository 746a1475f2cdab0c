# Copyright 2026 The fklab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the fklab history-state verification library."""

import json as _json

from ._fklab import (
    Lattice,
    NoiseModel,
    ExactParameters,
    build_lattice,
    echo_fidelity,
    fidelity_lower_bound,
    tvd_fidelity_bound,
    stochastic_trace_bound,
    hoeffding_bound,
    completeness_rejection_bound,
    model_parameters,
    degraded_parameters,
    u_value,
    ideal_output_distribution,
    _run_protocol,
    _run_bound_suite,
)

__all__ = [
    "Lattice",
    "NoiseModel",
    "ExactParameters",
    "build_lattice",
    "echo_fidelity",
    "fidelity_lower_bound",
    "tvd_fidelity_bound",
    "stochastic_trace_bound",
    "hoeffding_bound",
    "completeness_rejection_bound",
    "model_parameters",
    "degraded_parameters",
    "u_value",
    "ideal_output_distribution",
    "run_protocol",
    "run_bound_suite",
]


def run_protocol(rows, cols, input, num_copies, seed, noise=None, threads=0):
    """Runs one protocol round against an honest simulated prover.

    Returns the report as a dict (same fields as the CLI report JSON).
    """
    return _json.loads(_run_protocol(rows, cols, input, num_copies, seed, noise or NoiseModel(), threads))


def run_bound_suite(suite, instances=100, seed=0):
    """Returns a list of (test_name, instances, violations, max_margin) rows."""
    return [tuple(r) for r in _run_bound_suite(suite, instances, seed)]
