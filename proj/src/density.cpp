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

#include "spinchain/density.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

namespace spinchain {

DensityMatrix::DensityMatrix(int n_sites, DenseCMat entries) : n_sites_(n_sites), entries_(std::move(entries)) {
    validate_site_count(n_sites_);
    const Eigen::Index dim = Eigen::Index(1) << n_sites_;
    if (entries_.rows() != dim || entries_.cols() != dim)
        throw ParameterError("density matrix dimension must be 2^n_sites on both axes");
}

DensityMatrix DensityMatrix::from_pure(int n_sites, const Eigen::VectorXcd& psi) {
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    if (psi.size() != dim) throw ParameterError("state vector has wrong dimension");
    return {n_sites, DenseCMat(psi * psi.adjoint())};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_sites) {
    const int n = rho.n_sites();
    if (keep_sites.empty()) throw ParameterError("keep_sites must be nonempty");
    for (std::size_t i = 0; i < keep_sites.size(); ++i) {
        if (keep_sites[i] < 1 || keep_sites[i] > n)
            throw ParameterError("keep_sites entry out of range 1..n_sites");
        if (i > 0 && keep_sites[i] <= keep_sites[i - 1])
            throw ParameterError("keep_sites must be strictly increasing");
    }

    const int k = int(keep_sites.size());
    const int t = n - k;

    // Bit positions (in the full index) of kept and traced-out sites, both in
    // order of decreasing significance so sub-index bit 0 stays the last site.
    std::vector<int> keep_bits, traced_bits;
    std::vector<bool> kept(n + 1, false);
    for (int s : keep_sites) kept[s] = true;
    for (int s = 1; s <= n; ++s) {
        (kept[s] ? keep_bits : traced_bits).push_back(site_bit(n, s));
    }

    auto scatter = [](Eigen::Index sub, const std::vector<int>& bits) {
        Eigen::Index full = 0;
        const int nb = int(bits.size());
        for (int b = 0; b < nb; ++b)
            if (sub & (Eigen::Index(1) << (nb - 1 - b))) full |= Eigen::Index(1) << bits[b];
        return full;
    };

    const Eigen::Index dim_keep = Eigen::Index(1) << k;
    const Eigen::Index dim_tr = Eigen::Index(1) << t;
    DenseCMat out = DenseCMat::Zero(dim_keep, dim_keep);
    const DenseCMat& in = rho.entries();

    for (Eigen::Index e = 0; e < dim_tr; ++e) {
        const Eigen::Index env = scatter(e, traced_bits);
        for (Eigen::Index j = 0; j < dim_keep; ++j) {
            const Eigen::Index cj = scatter(j, keep_bits) | env;
            for (Eigen::Index i = 0; i < dim_keep; ++i) {
                out(i, j) += in(scatter(i, keep_bits) | env, cj);
            }
        }
    }
    return {k, std::move(out)};
}

DensityDiagnostics check_density(const DensityMatrix& rho, double tol) {
    const DenseCMat& m = rho.entries();
    DensityDiagnostics d;
    d.trace_error = std::abs(m.trace() - Complex(1.0));
    d.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
    d.purity = (m * m).trace().real();

    DenseCMat herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseCMat> es(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();

    d.ok = d.trace_error <= tol && d.hermiticity_error <= tol && d.min_eigenvalue >= -tol;
    return d;
}

DensityMatrix hermitize(const DensityMatrix& rho) {
    return {rho.n_sites(), DenseCMat(0.5 * (rho.entries() + rho.entries().adjoint()))};
}

}  // namespace spinchain
