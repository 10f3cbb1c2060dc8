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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "spinchain/errors.hpp"

namespace spinchain {

using Complex = std::complex<double>;
using SparseCMat = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using DenseCMat = Eigen::MatrixXcd;

/// Largest chain handled by the exact dense representation.
inline constexpr int kMaxSites = 14;

/// Basis convention used across the library:
///   - site 1 is the most significant bit of the computational-basis index,
///     site n_sites the least significant;
///   - bit value 1 marks the excited state |1>, with sigma_minus = |0><1|
///     and sigma_z = |1><1| - |0><0|.
inline int site_bit(int n_sites, int site) { return n_sites - site; }

inline void validate_site_count(int n_sites) {
    if (n_sites < 1 || n_sites > kMaxSites)
        throw ParameterError("n_sites must be in 1.." + std::to_string(kMaxSites) +
                             ", got " + std::to_string(n_sites));
}

/// Complex linear operator on an n-qubit register, stored sparse (row-major
/// CSR). Hamiltonians and jump operators have O(n 2^n) nonzeros, so sparse
/// storage keeps products with dense states cheap.
class QuantumOperator {
public:
    QuantumOperator(int n_sites, SparseCMat mat);

    static QuantumOperator identity(int n_sites);
    static QuantumOperator zero(int n_sites);

    int n_sites() const { return n_sites_; }
    Eigen::Index dim() const { return mat_.rows(); }
    const SparseCMat& matrix() const { return mat_; }

    QuantumOperator adjoint() const;
    DenseCMat to_dense() const { return DenseCMat(mat_); }

    /// max elementwise |A - A^dagger|
    double hermiticity_error() const;

    QuantumOperator& operator+=(const QuantumOperator& rhs);
    QuantumOperator& operator-=(const QuantumOperator& rhs);
    friend QuantumOperator operator+(QuantumOperator lhs, const QuantumOperator& rhs);
    friend QuantumOperator operator-(QuantumOperator lhs, const QuantumOperator& rhs);
    friend QuantumOperator operator*(const QuantumOperator& lhs, const QuantumOperator& rhs);
    friend QuantumOperator operator*(Complex scale, const QuantumOperator& op);

private:
    int n_sites_;
    SparseCMat mat_;
};

namespace pauli {

inline Eigen::Matrix2cd identity() { return Eigen::Matrix2cd::Identity(); }

/// |0><1|: annihilates the excitation.
inline Eigen::Matrix2cd sigma_minus() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = 1.0;
    return m;
}

/// |1><0|
inline Eigen::Matrix2cd sigma_plus() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(1, 0) = 1.0;
    return m;
}

/// |1><1| - |0><0|
inline Eigen::Matrix2cd sigma_z() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

inline Eigen::Matrix2cd sigma_y() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = Complex(0, -1);
    m(1, 0) = Complex(0, 1);
    return m;
}

/// |1><1|, the excitation-number operator of one site.
inline Eigen::Matrix2cd number() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(1, 1) = 1.0;
    return m;
}

}  // namespace pauli

/// I x ... x local_op x ... x I with local_op at position `site` (1-based).
QuantumOperator embed_site_operator(const Eigen::Matrix2cd& local_op, int site, int n_sites);

}  // namespace spinchain
