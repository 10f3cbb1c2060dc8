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

#include "spinchain/dynamics.hpp"

namespace spinchain {

// Brute-force cross-checks for small chains: materialize the full
// superoperator acting on the column-stacked density matrix and propagate by
// a dense matrix exponential. The production integrators never touch these
// objects (a dense superoperator is dim^2 x dim^2); they exist to verify the
// integrators independently.

/// Dense Liouvillian on the column-stacked state, dim^2 x dim^2.
DenseCMat build_liouvillian(const QuantumOperator& H, const NoiseModel& noise);

/// exp(L t) applied to the vectorized initial state.
DenseCMat propagate_exact(const DenseCMat& liouvillian, const DenseCMat& rho0, double t);

}  // namespace spinchain
