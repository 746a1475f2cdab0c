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

#include "fklab/lattice.h"

#include <algorithm>

#include "fklab/errors.h"

namespace fklab {

bool LatticeGeometry::in_partition_b(uint32_t q) const {
    return std::binary_search(partition_b.begin(), partition_b.end(), q);
}

uint64_t LatticeGeometry::partition_b_mask() const {
    if (num_qubits() > 64) {
        throw CapacityError("partition mask needs at most 64 qubits");
    }
    uint64_t mask = 0;
    for (uint32_t q : partition_b) {
        mask |= uint64_t{1} << q;
    }
    return mask;
}

std::vector<std::vector<uint32_t>> LatticeGeometry::adjacency() const {
    std::vector<std::vector<uint32_t>> adj(num_qubits());
    for (const auto &[a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

LatticeGeometry build_lattice(uint32_t rows, uint32_t cols) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("lattice dimensions must be positive");
    }
    if (static_cast<uint64_t>(rows) * cols < 2) {
        throw DimensionError("lattice needs at least two qubits");
    }
    LatticeGeometry g;
    g.rows = rows;
    g.cols = cols;
    g.edges.reserve(static_cast<size_t>(rows) * (cols - 1) + static_cast<size_t>(cols) * (rows - 1));
    for (uint32_t r = 0; r < rows; r++) {
        for (uint32_t c = 0; c < cols; c++) {
            uint32_t q = r * cols + c;
            if (c + 1 < cols) {
                g.edges.emplace_back(q, q + 1);
            }
            if (r + 1 < rows) {
                g.edges.emplace_back(q, q + cols);
            }
            if ((r + c) % 2 == 1) {
                g.partition_b.push_back(q);
            }
        }
    }
    return g;
}

InputSpec random_input(size_t n, RandomStream &rng) {
    InputSpec spec;
    spec.choices.reserve(n);
    for (size_t k = 0; k < n; k++) {
        spec.choices.push_back(rng.bit() ? InputType::Y_TYPE : InputType::X_TYPE);
    }
    return spec;
}

std::string to_string(const InputSpec &input) {
    std::string s;
    s.reserve(input.size());
    for (InputType t : input.choices) {
        s.push_back(t == InputType::X_TYPE ? 'X' : 'Y');
    }
    return s;
}

InputSpec input_from_string(const std::string &text) {
    InputSpec spec;
    for (char c : text) {
        if (c == 'X' || c == 'x') {
            spec.choices.push_back(InputType::X_TYPE);
        } else if (c == 'Y' || c == 'y') {
            spec.choices.push_back(InputType::Y_TYPE);
        } else {
            throw ValidationError(std::string("bad input-state character '") + c + "'");
        }
    }
    return spec;
}

void check_sizes(const LatticeGeometry &lattice, const InputSpec &input) {
    if (input.size() != lattice.num_qubits()) {
        throw DimensionError("input has " + std::to_string(input.size()) + " qubits but lattice has " +
                             std::to_string(lattice.num_qubits()));
    }
}

}  // namespace fklab
