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

#ifndef FKLAB_LATTICE_H
#define FKLAB_LATTICE_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fklab/rng.h"

namespace fklab {

using Edge = std::pair<uint32_t, uint32_t>;

/// Open-boundary rows x cols square lattice. Cell (r, c) is qubit r*cols + c.
/// partition_b holds the cells with (r + c) odd, so every edge crosses the
/// bipartition.
struct LatticeGeometry {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<Edge> edges;
    std::vector<uint32_t> partition_b;

    size_t num_qubits() const { return static_cast<size_t>(rows) * cols; }
    bool in_partition_b(uint32_t q) const;
    /// Bitmask of partition_b (requires num_qubits() <= 64).
    uint64_t partition_b_mask() const;
    /// Neighbour lists, indexed by qubit.
    std::vector<std::vector<uint32_t>> adjacency() const;

    bool operator==(const LatticeGeometry &) const = default;
};

LatticeGeometry build_lattice(uint32_t rows, uint32_t cols);

enum class InputType : uint8_t {
    X_TYPE = 0,  ///< ((1+i)|0> + (1-i)|1>) / 2
    Y_TYPE = 1,  ///< ((1+i)|0> + e^{-i pi/4} (1-i)|1>) / 2
};

struct InputSpec {
    std::vector<InputType> choices;

    size_t size() const { return choices.size(); }
    bool operator==(const InputSpec &) const = default;
};

InputSpec random_input(size_t n, RandomStream &rng);

/// "XYYX..." form, one character per qubit.
std::string to_string(const InputSpec &input);
InputSpec input_from_string(const std::string &text);

/// Throws DimensionError unless input.size() == lattice.num_qubits().
void check_sizes(const LatticeGeometry &lattice, const InputSpec &input);

}  // namespace fklab

#endif
