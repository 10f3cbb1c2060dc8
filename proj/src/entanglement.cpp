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

#include "spinchain/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace spinchain {

namespace {

constexpr double kClipThreshold = 1e-10;

Eigen::Matrix4cd spin_flip() {
    // sigma_y (x) sigma_y
    Eigen::Matrix4cd f = Eigen::Matrix4cd::Zero();
    f(0, 3) = -1.0;
    f(1, 2) = 1.0;
    f(2, 1) = 1.0;
    f(3, 0) = -1.0;
    return f;
}

}  // namespace

ConcurrenceResult concurrence(const DensityMatrix& rho2) {
    if (rho2.n_sites() != 2) throw ParameterError("concurrence expects a two-qubit state");
    const Eigen::Matrix4cd rho = rho2.entries();
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-6)
        throw ParameterError("concurrence expects a Hermitian state");
    if (std::abs(rho.trace() - Complex(1.0)) > 1e-6)
        throw ParameterError("concurrence expects a unit-trace state");

    const Eigen::Matrix4cd flip = spin_flip();
    const Eigen::Matrix4cd m = rho * flip * rho.conjugate() * flip;

    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m, /*computeEigenvectors=*/false);
    ConcurrenceResult result;
    for (int i = 0; i < 4; ++i) {
        const Complex ev = es.eigenvalues()(i);
        if (std::abs(ev.imag()) > kClipThreshold)
            throw NumericalError("concurrence eigenvalue has significant imaginary part " +
                                 std::to_string(ev.imag()));
        double re = ev.real();
        if (re < -kClipThreshold)
            throw NumericalError("concurrence eigenvalue is significantly negative: " +
                                 std::to_string(re));
        if (re < 0.0) re = 0.0;
        result.lambdas[i] = std::sqrt(re);
    }
    std::sort(result.lambdas.begin(), result.lambdas.end(), std::greater<double>());

    const double sum = result.lambdas[0] + result.lambdas[1] + result.lambdas[2] + result.lambdas[3];
    result.value = std::clamp(2.0 * result.lambdas[0] - sum, 0.0, 1.0);
    return result;
}

ConcurrenceResult end_to_end_concurrence(const DensityMatrix& rho_full) {
    return concurrence(partial_trace(rho_full, {1, rho_full.n_sites()}));
}

}  // namespace spinchain
