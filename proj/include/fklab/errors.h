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

#ifndef FKLAB_ERRORS_H
#define FKLAB_ERRORS_H

#include <stdexcept>
#include <string>

namespace fklab {

/// Mismatched register sizes or invalid lattice dimensions.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An argument violates a documented invariant (non-unitary gate, bad rate, ...).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A full-vector or dense operation was requested above its size guard.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

/// A numeric search (e.g. degraded-model construction) could not reach its target.
struct SearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bound evaluated outside the regime where it is defined.
struct RegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace fklab

#endif
