// Copyright 2026 The spinchain authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>

#include "spinchain/density.hpp"

namespace spinchain {

struct ConcurrenceResult {
    double value = 0.0;                        ///< max(0, 2*lambda_max - sum lambda_i), in [0,1]
    std::array<double, 4> lambdas{0, 0, 0, 0}; ///< sorted descending
};

/// Wootters concurrence of a two-qubit state: the lambdas are the square
/// roots of the eigenvalues of rho (sy x sy) rho* (sy x sy), conjugation
/// taken in the computational basis. Eigenvalue real parts below -1e-10 or
/// imaginary parts above 1e-10 raise NumericalError; small negatives are
/// clipped to zero.
ConcurrenceResult concurrence(const DensityMatrix& rho2);

/// Concurrence of the reduced state of sites {1, N}.
ConcurrenceResult end_to_end_concurrence(const DensityMatrix& rho_full);

}  // namespace spinchain
