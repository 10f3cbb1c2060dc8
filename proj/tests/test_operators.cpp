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

#include "doctest.h"
#include "spinchain/operators.hpp"
#include "test_helpers.hpp"

using namespace spinchain;

TEST_CASE("embed_site_operator: sigma_minus moves |01> to |00>") {
    // site 1 is the most significant bit, so |01> is index 1
    const QuantumOperator op = embed_site_operator(pauli::sigma_minus(), 2, 2);
    const DenseCMat m = op.to_dense();
    Eigen::Vector4cd in = Eigen::Vector4cd::Zero();
    in(1) = 1.0;
    const Eigen::Vector4cd out = m * in;
    CHECK(std::abs(out(0) - Complex(1.0)) < 1e-15);
    CHECK(out.tail(3).norm() < 1e-15);
}

TEST_CASE("embed_site_operator: identity embeds to identity") {
    const QuantumOperator op = embed_site_operator(pauli::identity(), 1, 3);
    CHECK((op.to_dense() - DenseCMat::Identity(8, 8)).norm() == 0.0);
}

TEST_CASE("embed_site_operator: sigma_z on site 1 of two qubits") {
    const QuantumOperator op = embed_site_operator(pauli::sigma_z(), 1, 2);
    const DenseCMat m = op.to_dense();
    const double expected[4] = {-1.0, -1.0, 1.0, 1.0};  // |00>,|01>,|10>,|11>
    for (int i = 0; i < 4; ++i) {
        CHECK(m(i, i).real() == doctest::Approx(expected[i]));
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(std::abs(m(i, j)) == 0.0);
    }
}

TEST_CASE("embed_site_operator: parameter errors") {
    CHECK_THROWS_AS(embed_site_operator(pauli::sigma_z(), 0, 2), ParameterError);
    CHECK_THROWS_AS(embed_site_operator(pauli::sigma_z(), 3, 2), ParameterError);
    CHECK_THROWS_AS(QuantumOperator(2, SparseCMat(3, 3)), ParameterError);
    CHECK_THROWS_AS(validate_site_count(kMaxSites + 1), ParameterError);
}

TEST_CASE("operator algebra requires matching register sizes") {
    const QuantumOperator a = QuantumOperator::identity(2);
    const QuantumOperator b = QuantumOperator::identity(3);
    CHECK_THROWS_AS(a + b, ParameterError);
    CHECK_THROWS_AS(a * b, ParameterError);
}

TEST_CASE("disjoint-site embeddings commute") {
    std::mt19937 rng(12345);
    for (int n = 2; n <= 5; ++n) {
        for (int rep = 0; rep < 4; ++rep) {
            const int k = 1 + int(rng() % n);
            int j = 1 + int(rng() % n);
            while (j == k) j = 1 + int(rng() % n);
            const QuantumOperator a = embed_site_operator(testing::random_local(rng), k, n);
            const QuantumOperator b = embed_site_operator(testing::random_local(rng), j, n);
            const DenseCMat diff = (a * b).to_dense() - (b * a).to_dense();
            CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("adjoint and hermiticity error") {
    const QuantumOperator sm = embed_site_operator(pauli::sigma_minus(), 1, 2);
    CHECK(sm.hermiticity_error() > 0.9);
    const QuantumOperator h = sm + sm.adjoint();
    CHECK(h.hermiticity_error() == 0.0);
}
