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
#include "spinchain/density.hpp"
#include "spinchain/model.hpp"
#include "test_helpers.hpp"

using namespace spinchain;

namespace {

Eigen::Vector2cd plus_state() {
    Eigen::Vector2cd v;
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return v;
}

}  // namespace

TEST_CASE("partial trace of a product state") {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(0) = plus_state()(0);  // |+> (x) |0>
    psi(2) = plus_state()(1);
    const DensityMatrix rho = DensityMatrix::from_pure(2, psi);
    const DensityMatrix red = partial_trace(rho, {1});
    CHECK(red.dim() == 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(red.entries()(i, j) - Complex(0.5)) < 1e-15);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(0) = 1.0 / std::sqrt(2.0);
    psi(3) = 1.0 / std::sqrt(2.0);
    const DensityMatrix red = partial_trace(DensityMatrix::from_pure(2, psi), {1});
    CHECK(std::abs(red.entries()(0, 0) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(red.entries()(1, 1) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(red.entries()(0, 1)) < 1e-15);
}

TEST_CASE("end pair of the standard initial state is |+>|+>") {
    ChainSpec spec;
    spec.n_sites = 6;
    const DensityMatrix red = partial_trace(initial_state(spec), {1, 6});
    CHECK(red.dim() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(red.entries()(i, j) - Complex(0.25)) < 1e-15);
}

TEST_CASE("partial trace preserves the trace") {
    std::mt19937 rng(777);
    for (int n = 2; n <= 5; ++n) {
        const DensityMatrix rho{n, testing::random_density(Eigen::Index(1) << n, rng)};
        std::vector<int> keep;
        for (int s = 1; s <= n; s += 2) keep.push_back(s);
        const DensityMatrix red = partial_trace(rho, keep);
        CHECK(std::abs(red.trace() - rho.trace()) < 1e-12);
    }
}

TEST_CASE("partial trace recovers a product factor") {
    std::mt19937 rng(778);
    for (int n1 = 1; n1 <= 2; ++n1) {
        for (int n2 = 1; n2 <= 3; ++n2) {
            const Eigen::Index d1 = Eigen::Index(1) << n1;
            const Eigen::Index d2 = Eigen::Index(1) << n2;
            const DenseCMat rho1 = testing::random_density(d1, rng);
            const DenseCMat rho2 = testing::random_density(d2, rng);
            DenseCMat prod(d1 * d2, d1 * d2);
            for (Eigen::Index i1 = 0; i1 < d1; ++i1)
                for (Eigen::Index j1 = 0; j1 < d1; ++j1)
                    for (Eigen::Index i2 = 0; i2 < d2; ++i2)
                        for (Eigen::Index j2 = 0; j2 < d2; ++j2)
                            prod(i1 * d2 + i2, j1 * d2 + j2) = rho1(i1, j1) * rho2(i2, j2);
            std::vector<int> keep;
            for (int s = 1; s <= n1; ++s) keep.push_back(s);
            const DensityMatrix red = partial_trace(DensityMatrix{n1 + n2, prod}, keep);
            CHECK((red.entries() - rho1).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("partial trace parameter errors") {
    const DensityMatrix rho{2, DenseCMat::Identity(4, 4) / 4.0};
    CHECK_THROWS_AS(partial_trace(rho, {}), ParameterError);
    CHECK_THROWS_AS(partial_trace(rho, {2, 1}), ParameterError);
    CHECK_THROWS_AS(partial_trace(rho, {1, 1}), ParameterError);
    CHECK_THROWS_AS(partial_trace(rho, {0}), ParameterError);
    CHECK_THROWS_AS(partial_trace(rho, {3}), ParameterError);
}

TEST_CASE("check_density diagnostics") {
    DenseCMat pure = DenseCMat::Zero(2, 2);
    pure(0, 0) = 1.0;
    const DensityDiagnostics d0 = check_density(DensityMatrix{1, pure});
    CHECK(d0.trace_error == doctest::Approx(0.0));
    CHECK(d0.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d0.purity == doctest::Approx(1.0));
    CHECK(d0.ok);

    const DensityDiagnostics d1 = check_density(DensityMatrix{1, DenseCMat::Identity(2, 2) / 2.0});
    CHECK(d1.purity == doctest::Approx(0.5));

    DenseCMat skew = DenseCMat::Identity(2, 2) / 2.0;
    skew(0, 1) = Complex(1e-3, 0.0);  // no matching (1,0) entry
    const DensityDiagnostics d2 = check_density(DensityMatrix{1, skew});
    CHECK(d2.hermiticity_error == doctest::Approx(1e-3));
    CHECK_FALSE(d2.ok);
}

TEST_CASE("hermitize") {
    std::mt19937 rng(779);
    const DenseCMat h = testing::random_density(4, rng);
    const DensityMatrix fixed = hermitize(DensityMatrix{2, h});
    CHECK((fixed.entries() - h).cwiseAbs().maxCoeff() < 1e-15);

    DenseCMat m = DenseCMat::Zero(2, 2);
    m(0, 1) = Complex(1.0, 2.0);
    m(1, 0) = Complex(3.0, -4.0);
    const DensityMatrix out = hermitize(DensityMatrix{1, m});
    CHECK(out.entries()(0, 1) == Complex(2.0, 3.0));  // (a + conj(b)) / 2
    CHECK(out.entries()(1, 0) == Complex(2.0, -3.0));

    DenseCMat anti = DenseCMat::Zero(2, 2);
    anti(0, 1) = Complex(0.0, 1.0);
    anti(1, 0) = Complex(0.0, 1.0);  // equals -adjoint
    CHECK(hermitize(DensityMatrix{1, anti}).entries().cwiseAbs().maxCoeff() == 0.0);
}
