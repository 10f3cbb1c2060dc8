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

#include "spinchain/operators.hpp"

namespace spinchain {

namespace {

void require_same_register(const QuantumOperator& a, const QuantumOperator& b) {
    if (a.n_sites() != b.n_sites())
        throw ParameterError("operator algebra requires equal n_sites, got " +
                             std::to_string(a.n_sites()) + " and " + std::to_string(b.n_sites()));
}

}  // namespace

QuantumOperator::QuantumOperator(int n_sites, SparseCMat mat) : n_sites_(n_sites), mat_(std::move(mat)) {
    validate_site_count(n_sites_);
    const Eigen::Index dim = Eigen::Index(1) << n_sites_;
    if (mat_.rows() != dim || mat_.cols() != dim)
        throw ParameterError("operator dimension must be 2^n_sites on both axes");
}

QuantumOperator QuantumOperator::identity(int n_sites) {
    validate_site_count(n_sites);
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    SparseCMat m(dim, dim);
    m.setIdentity();
    return {n_sites, std::move(m)};
}

QuantumOperator QuantumOperator::zero(int n_sites) {
    validate_site_count(n_sites);
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    return {n_sites, SparseCMat(dim, dim)};
}

QuantumOperator QuantumOperator::adjoint() const {
    return {n_sites_, SparseCMat(mat_.adjoint())};
}

double QuantumOperator::hermiticity_error() const {
    SparseCMat diff = mat_ - SparseCMat(mat_.adjoint());
    double err = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseCMat::InnerIterator it(diff, k); it; ++it)
            err = std::max(err, std::abs(it.value()));
    return err;
}

QuantumOperator& QuantumOperator::operator+=(const QuantumOperator& rhs) {
    require_same_register(*this, rhs);
    mat_ += rhs.mat_;
    return *this;
}

QuantumOperator& QuantumOperator::operator-=(const QuantumOperator& rhs) {
    require_same_register(*this, rhs);
    mat_ -= rhs.mat_;
    return *this;
}

QuantumOperator operator+(QuantumOperator lhs, const QuantumOperator& rhs) {
    lhs += rhs;
    return lhs;
}

QuantumOperator operator-(QuantumOperator lhs, const QuantumOperator& rhs) {
    lhs -= rhs;
    return lhs;
}

QuantumOperator operator*(const QuantumOperator& lhs, const QuantumOperator& rhs) {
    require_same_register(lhs, rhs);
    return {lhs.n_sites_, SparseCMat(lhs.mat_ * rhs.mat_)};
}

QuantumOperator operator*(Complex scale, const QuantumOperator& op) {
    return {op.n_sites_, SparseCMat(scale * op.mat_)};
}

QuantumOperator embed_site_operator(const Eigen::Matrix2cd& local_op, int site, int n_sites) {
    validate_site_count(n_sites);
    if (site < 1 || site > n_sites)
        throw ParameterError("site " + std::to_string(site) + " out of range 1.." +
                             std::to_string(n_sites));

    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    const std::uint32_t bit = 1u << site_bit(n_sites, site);

    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(std::size_t(dim) * 2);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const int cb = (std::uint32_t(col) & bit) ? 1 : 0;
        for (int rb = 0; rb < 2; ++rb) {
            const Complex v = local_op(rb, cb);
            if (v == Complex(0.0)) continue;
            const Eigen::Index row = (col & ~Eigen::Index(bit)) | (rb ? Eigen::Index(bit) : 0);
            trip.emplace_back(row, col, v);
        }
    }
    SparseCMat m(dim, dim);
    m.setFromTriplets(trip.begin(), trip.end());
    return {n_sites, std::move(m)};
}

}  // namespace spinchain
