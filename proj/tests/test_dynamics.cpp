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

#include <cmath>

#include "doctest.h"
#include "spinchain/brute_force.hpp"
#include "spinchain/dynamics.hpp"
#include "spinchain/entanglement.hpp"
#include "spinchain/model.hpp"
#include "test_helpers.hpp"

using namespace spinchain;

namespace {

NoiseModel single_site_noise(NoiseKind kind, double gamma, double n_bar) {
    NoiseModel n;
    n.kind = kind;
    n.gamma = gamma;
    n.n_bar = n_bar;
    n.jump_sites = {1};
    return n;
}

DensityMatrix excited_qubit() {
    DenseCMat m = DenseCMat::Zero(2, 2);
    m(1, 1) = 1.0;
    return {1, m};
}

}  // namespace

TEST_CASE("single-qubit amplitude damping right-hand side") {
    const QuantumOperator h0 = QuantumOperator::zero(1);
    const double gamma = 0.3;
    const DensityMatrix d =
        lindblad_rhs(excited_qubit(), h0, single_site_noise(NoiseKind::dissipation, gamma, 0.0));
    CHECK(d.entries()(0, 0).real() == doctest::Approx(gamma));
    CHECK(d.entries()(1, 1).real() == doctest::Approx(-gamma));
    CHECK(std::abs(d.entries()(0, 1)) < 1e-15);
}

TEST_CASE("single-qubit dephasing damps coherence at rate 2 gamma") {
    const QuantumOperator h0 = QuantumOperator::zero(1);
    DenseCMat m(2, 2);
    m << 0.5, 0.3, 0.3, 0.5;
    const double gamma = 0.2;
    const DensityMatrix d = lindblad_rhs(DensityMatrix{1, m}, h0,
                                         single_site_noise(NoiseKind::dephasing, gamma, 0.7));
    CHECK(d.entries()(0, 1).real() == doctest::Approx(-2.0 * gamma * 0.3));
    CHECK(std::abs(d.entries()(0, 0)) < 1e-15);  // populations untouched
}

TEST_CASE("gamma = 0 reduces to the pure commutator") {
    std::mt19937 rng(99);
    ChainSpec spec;
    spec.n_sites = 4;
    const QuantumOperator h = total_hamiltonian(spec);
    const DensityMatrix rho{4, testing::random_density(16, rng)};
    NoiseModel off;
    const DensityMatrix d = lindblad_rhs(rho, h, off);
    const Complex mi(0.0, -1.0);
    const DenseCMat expect =
        mi * (h.to_dense() * rho.entries() - rho.entries() * h.to_dense());
    CHECK((d.entries() - expect).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(d.trace()) < 1e-14);
}

TEST_CASE("rhs is traceless and Hermitian for every noise kind") {
    std::mt19937 rng(100);
    for (NoiseKind kind : {NoiseKind::none, NoiseKind::dissipation, NoiseKind::dephasing}) {
        ChainSpec spec;
        spec.n_sites = 4;
        spec.noise_kind = kind;
        spec.gamma = 0.4;
        spec.n_bar = 0.25;
        const QuantumOperator h = total_hamiltonian(spec);
        const NoiseModel noise = NoiseModel::from_spec(spec);
        const DensityMatrix rho{4, testing::random_density(16, rng)};
        const DensityMatrix d = lindblad_rhs(rho, h, noise);
        CHECK(std::abs(d.trace()) < 1e-12);
        CHECK((d.entries() - d.entries().adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("stationary when H = 0 and gamma = 0") {
    const DensityMatrix rho = excited_qubit();
    const IntegratorConfig config;
    const DensityMatrix next = step(rho, QuantumOperator::zero(1), NoiseModel{}, config, 0.02);
    CHECK((next.entries() - rho.entries()).cwiseAbs().maxCoeff() < 1e-16);
}

TEST_CASE("single-qubit decay matches the rate-equation solution") {
    // dp1/dt = -gamma (n_bar+1) p1 + gamma n_bar p0 solves to
    // p1(t) = p_ss + (p1(0) - p_ss) exp(-gamma (2 n_bar + 1) t)
    const double gamma = 1.0;
    for (double n_bar : {0.0, 0.05, 0.1}) {
        NoiseModel noise = single_site_noise(NoiseKind::dissipation, gamma, n_bar);
        IntegratorConfig config;
        const double t_end = 1.0 / gamma;
        DensityMatrix rho = evolve(excited_qubit(), QuantumOperator::zero(1), noise, config,
                                   t_end, t_end);
        const double p_ss = n_bar / (2.0 * n_bar + 1.0);
        const double expect = p_ss + (1.0 - p_ss) * std::exp(-gamma * (2.0 * n_bar + 1.0) * t_end);
        CHECK(rho.entries()(1, 1).real() == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("single-qubit thermal steady state") {
    const double gamma = 1.0;
    for (double n_bar : {0.05, 0.1}) {
        NoiseModel noise = single_site_noise(NoiseKind::dissipation, gamma, n_bar);
        IntegratorConfig config;
        DensityMatrix rho = evolve(excited_qubit(), QuantumOperator::zero(1), noise, config,
                                   40.0, 40.0);
        CHECK(rho.entries()(1, 1).real() ==
              doctest::Approx(n_bar / (2.0 * n_bar + 1.0)).epsilon(1e-8));
    }
}

TEST_CASE("energy is conserved without noise") {
    ChainSpec spec;
    spec.n_sites = 4;
    const QuantumOperator h = total_hamiltonian(spec);
    const DensityMatrix rho0 = initial_state(spec);
    const double e0 = (h.to_dense() * rho0.entries()).trace().real();
    IntegratorConfig config;
    double max_drift = 0.0;
    evolve(rho0, h, NoiseModel{}, config, 1000.0, 100.0,
           [&](double, const DensityMatrix& r) {
               const double e = (h.to_dense() * r.entries()).trace().real();
               max_drift = std::max(max_drift, std::abs(e - e0));
           });
    CHECK(max_drift < 1e-8);
}

TEST_CASE("zero-duration evolve emits exactly the initial state") {
    ChainSpec spec;
    spec.n_sites = 4;
    int count = 0;
    const DensityMatrix rho0 = initial_state(spec);
    evolve(rho0, total_hamiltonian(spec), NoiseModel{}, IntegratorConfig{}, 0.0, 1.0,
           [&](double t, const DensityMatrix& r) {
               ++count;
               CHECK(t == 0.0);
               CHECK((r.entries() - rho0.entries()).cwiseAbs().maxCoeff() == 0.0);
           });
    CHECK(count == 1);
}

TEST_CASE("first concurrence maximum sits near the effective-model prediction") {
    ChainSpec spec;
    spec.n_sites = 4;
    spec.J_prime = 0.05;
    const double J_e = effective_coupling(spec);  // +0.0025 at N=4
    const double t_peak = M_PI / (2.0 * std::abs(J_e));

    IntegratorConfig config;
    double best_t = 0.0, best_c = -1.0;
    evolve(initial_state(spec), total_hamiltonian(spec), NoiseModel{}, config, 1.2 * t_peak, 5.0,
           [&](double t, const DensityMatrix& r) {
               const double c = end_to_end_concurrence(r).value;
               if (c > best_c) {
                   best_c = c;
                   best_t = t;
               }
           });
    CHECK(best_c > 0.9);
    CHECK(std::abs(best_t - t_peak) < 0.1 * t_peak);
}

TEST_CASE("rk45 agrees with rk4 on a damped qubit") {
    NoiseModel noise = single_site_noise(NoiseKind::dissipation, 0.5, 0.1);
    IntegratorConfig fixed;
    IntegratorConfig adaptive;
    adaptive.method = IntegratorConfig::Method::rk45_adaptive;
    adaptive.tolerance = 1e-10;
    const DensityMatrix a =
        evolve(excited_qubit(), QuantumOperator::zero(1), noise, fixed, 5.0, 5.0);
    const DensityMatrix b =
        evolve(excited_qubit(), QuantumOperator::zero(1), noise, adaptive, 5.0, 5.0);
    CHECK((a.entries() - b.entries()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("integrator matches the dense matrix-exponential propagation at N=4") {
    for (NoiseKind kind : {NoiseKind::dissipation, NoiseKind::dephasing}) {
        ChainSpec spec;
        spec.n_sites = 4;
        spec.noise_kind = kind;
        spec.gamma = 0.05;
        spec.n_bar = kind == NoiseKind::dissipation ? 0.1 : 0.0;
        const QuantumOperator h = total_hamiltonian(spec);
        const NoiseModel noise = NoiseModel::from_spec(spec);
        const DensityMatrix rho0 = initial_state(spec);
        const DenseCMat liou = build_liouvillian(h, noise);

        IntegratorConfig config;
        for (double t : {1.0, 10.0}) {
            const DensityMatrix got = evolve(rho0, h, noise, config, t, t);
            const DenseCMat want = propagate_exact(liou, rho0.entries(), t);
            CHECK((got.entries() - want).cwiseAbs().maxCoeff() < 1e-6);
        }
    }
}

TEST_CASE("configuration validation") {
    IntegratorConfig c;
    c.dt = -1.0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = IntegratorConfig{};
    c.dt = 0.5;
    c.max_dt = 0.1;
    CHECK_THROWS_AS(c.validate(), ParameterError);

    NoiseModel n;
    n.jump_sites = {0};
    CHECK_THROWS_AS(n.validate(4), ParameterError);
}
