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

#include "spinchain/brute_force.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace spinchain {

DenseCMat build_liouvillian(const QuantumOperator& H, const NoiseModel& noise) {
    const Eigen::Index dim = H.dim();
    if (dim > 64)
        throw ParameterError("dense Liouvillian limited to n_sites <= 6 (dim^2 storage)");
    const DenseCMat h = H.to_dense();
    const DenseCMat id = DenseCMat::Identity(dim, dim);
    const Complex mi(0.0, -1.0);

    // column stacking: vec(A X B) = (B^T kron A) vec(X)
    DenseCMat liou =
        mi * (Eigen::kroneckerProduct(id, h) - Eigen::kroneckerProduct(h.transpose(), id));

    if (noise.active()) {
        const double w_down =
            0.5 * noise.gamma * (noise.kind == NoiseKind::dissipation ? noise.n_bar + 1.0 : 1.0);
        const double w_up =
            noise.kind == NoiseKind::dissipation ? 0.5 * noise.gamma * noise.n_bar : 0.0;
        const Eigen::Matrix2cd local =
            noise.kind == NoiseKind::dissipation ? pauli::sigma_minus() : pauli::sigma_z();
        for (int site : noise.jump_sites) {
            const DenseCMat jump = embed_site_operator(local, site, H.n_sites()).to_dense();
            const DenseCMat jd = jump.adjoint();
            const DenseCMat jdj = jd * jump;
            const DenseCMat jjd = jump * jd;
            liou += w_down * (2.0 * Eigen::kroneckerProduct(jump.conjugate(), jump) -
                              Eigen::kroneckerProduct(id, jdj) -
                              Eigen::kroneckerProduct(jdj.transpose(), id));
            if (w_up != 0.0)
                liou += w_up * (2.0 * Eigen::kroneckerProduct(jd.conjugate(), jd) -
                                Eigen::kroneckerProduct(id, jjd) -
                                Eigen::kroneckerProduct(jjd.transpose(), id));
        }
    }
    return liou;
}

DenseCMat propagate_exact(const DenseCMat& liouvillian, const DenseCMat& rho0, double t) {
    const Eigen::Index dim = rho0.rows();
    const DenseCMat prop = (liouvillian * t).exp();
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), dim * dim);
    v = prop * v;
    return Eigen::Map<const DenseCMat>(v.data(), dim, dim);
}

}  // namespace spinchain
