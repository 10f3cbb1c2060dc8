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

#include <vector>

#include <Eigen/Dense>

#include "spinchain/operators.hpp"

namespace spinchain {

/// Dense state (or state derivative) of an n-qubit register. Physical states
/// are Hermitian, unit-trace and PSD; those properties are reported by
/// check_density rather than enforced on construction so the type can also
/// carry master-equation derivatives and intermediate integrator stages.
class DensityMatrix {
public:
    DensityMatrix(int n_sites, DenseCMat entries);

    static DensityMatrix from_pure(int n_sites, const Eigen::VectorXcd& psi);

    int n_sites() const { return n_sites_; }
    Eigen::Index dim() const { return entries_.rows(); }
    const DenseCMat& entries() const { return entries_; }
    DenseCMat& entries() { return entries_; }

    Complex trace() const { return entries_.trace(); }

private:
    int n_sites_;
    DenseCMat entries_;
};

struct DensityDiagnostics {
    double trace_error = 0.0;        ///< |tr(rho) - 1|
    double hermiticity_error = 0.0;  ///< max elementwise |rho - rho^dagger|
    double min_eigenvalue = 0.0;     ///< smallest eigenvalue of (rho+rho^dagger)/2
    double purity = 0.0;             ///< tr(rho^2)
    bool ok = true;                  ///< all of the above within the supplied tolerance
};

/// Reduced state on keep_sites (1-based, strictly increasing). Trace is
/// preserved exactly up to rounding.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_sites);

/// Reporting only; never throws and never mutates the input. `tol` bounds
/// trace_error and hermiticity_error and -tol bounds min_eigenvalue for the
/// `ok` flag.
DensityDiagnostics check_density(const DensityMatrix& rho, double tol = 1e-8);

/// (rho + rho^dagger) / 2
DensityMatrix hermitize(const DensityMatrix& rho);

}  // namespace spinchain
