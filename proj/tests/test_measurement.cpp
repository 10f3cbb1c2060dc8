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
#include "spinchain/entanglement.hpp"
#include "spinchain/measurement.hpp"
#include "test_helpers.hpp"

using namespace spinchain;

TEST_CASE("channel projector structure at N=4") {
    const auto [m0, m1] = channel_projector(4);
    const DenseCMat p0 = m0.to_dense();
    const DenseCMat p1 = m1.to_dense();

    for (int i = 0; i < 16; ++i) {
        const bool empty = i == 0 || i == 1 || i == 8 || i == 9;
        CHECK(p0(i, i).real() == doctest::Approx(empty ? 1.0 : 0.0));
    }
    CHECK((p0 * p0 - p0).cwiseAbs().maxCoeff() < 1e-15);          // projector
    CHECK((p0 + p1 - DenseCMat::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((p0 * p1).cwiseAbs().maxCoeff() < 1e-15);               // orthogonal
    CHECK(p0.diagonal().sum().real() == doctest::Approx(4.0));    // rank 4
}

TEST_CASE("initial state is an eigenstate of the measurement") {
    ChainSpec spec;
    spec.n_sites = 4;
    const DensityMatrix rho0 = initial_state(spec);

    const auto [m0, m1] = channel_projector(4);
    const DenseCMat back = m0.to_dense() * rho0.entries() * m0.to_dense();
    CHECK((back - rho0.entries()).cwiseAbs().maxCoeff() < 1e-15);

    for (MeasurementMode mode : {MeasurementMode::nonselective, MeasurementMode::selective}) {
        const MeasurementOutcome out = apply_measurement(rho0, mode);
        CHECK(out.prob_empty == doctest::Approx(1.0));
        CHECK((out.state.entries() - rho0.entries()).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("fully excited channel never projects onto empty") {
    const int n = 4;
    // |0 11 0>: channel bits set, ends down -> index 0b0110 = 6
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
    psi(6) = 1.0;
    const DensityMatrix rho = DensityMatrix::from_pure(n, psi);

    const MeasurementOutcome out = apply_measurement(rho, MeasurementMode::nonselective);
    CHECK(out.prob_empty == doctest::Approx(0.0));
    CHECK((out.state.entries() - rho.entries()).cwiseAbs().maxCoeff() < 1e-15);

    CHECK_THROWS_AS(apply_measurement(rho, MeasurementMode::selective), NumericalError);
}

TEST_CASE("nonselective measurement kills cross-sector coherence") {
    // (|0_ch> + |one excitation in the channel>)/sqrt(2) with both ends down:
    // indices 0 and 4 at N=4
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
    psi(0) = 1.0 / std::sqrt(2.0);
    psi(4) = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho = DensityMatrix::from_pure(4, psi);

    const MeasurementOutcome out = apply_measurement(rho, MeasurementMode::nonselective);
    CHECK(out.prob_empty == doctest::Approx(0.5));
    CHECK(out.state.entries()(0, 0).real() == doctest::Approx(0.5));
    CHECK(out.state.entries()(4, 4).real() == doctest::Approx(0.5));
    CHECK(std::abs(out.state.entries()(0, 4)) < 1e-15);
    CHECK(std::abs(out.state.trace() - Complex(1.0)) < 1e-15);

    // purity cannot exceed 1 and drops for a genuine mixture
    const double purity = (out.state.entries() * out.state.entries()).trace().real();
    CHECK(purity <= 1.0 + 1e-12);
    CHECK(purity == doctest::Approx(0.5));
}

TEST_CASE("repeated measurement is idempotent on the state") {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
    psi(0) = std::sqrt(0.7);
    psi(4) = std::sqrt(0.3);
    const DensityMatrix rho = DensityMatrix::from_pure(4, psi);

    SUBCASE("nonselective: state fixed, branch weight unchanged") {
        const MeasurementOutcome first = apply_measurement(rho, MeasurementMode::nonselective);
        const MeasurementOutcome second =
            apply_measurement(first.state, MeasurementMode::nonselective);
        CHECK((second.state.entries() - first.state.entries()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(second.prob_empty == doctest::Approx(first.prob_empty));
    }
    SUBCASE("selective: state fixed, second application is certain") {
        const MeasurementOutcome first = apply_measurement(rho, MeasurementMode::selective);
        const MeasurementOutcome second =
            apply_measurement(first.state, MeasurementMode::selective);
        CHECK((second.state.entries() - first.state.entries()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(second.prob_empty == doctest::Approx(1.0));
    }
}

TEST_CASE("disabled schedule reproduces plain evolution") {
    ChainSpec spec;
    spec.n_sites = 4;
    spec.J_prime = 0.05;
    const NoiseModel noise;
    const MeasurementSchedule off;
    IntegratorConfig config;

    const RunRecord rec = scheduled_evolve(spec, noise, off, config, 20.0, 5.0);
    CHECK(rec.measurement_events.empty());
    CHECK(rec.samples.size() == 5);

    std::vector<double> reference;
    evolve(initial_state(spec), total_hamiltonian(spec), noise, config, 20.0, 5.0,
           [&](double, const DensityMatrix& r) {
               reference.push_back(end_to_end_concurrence(r).value);
           });
    REQUIRE(reference.size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(rec.samples[i].concurrence == doctest::Approx(reference[i]).epsilon(1e-10));
}

TEST_CASE("measurement events are recorded with their probabilities") {
    ChainSpec spec;
    spec.n_sites = 4;
    spec.J_prime = 0.2;  // 1/J' = 5
    MeasurementSchedule sched;
    sched.enabled = true;
    sched.tau = 10.0;
    IntegratorConfig config;

    const RunRecord rec = scheduled_evolve(spec, NoiseModel{}, sched, config, 30.0, 10.0);
    CHECK(rec.measurement_events.size() == 3);
    CHECK(rec.measurement_events[0].t == doctest::Approx(10.0));
    CHECK_FALSE(rec.zeno_warning);  // tau = 10 > 1/J' = 5
    for (const auto& ev : rec.measurement_events) {
        CHECK(ev.prob_empty <= 1.0 + 1e-12);
        CHECK(ev.prob_empty >= 0.0);
    }
    // samples exist at 0,10,20,30 and measurement precedes the sample
    CHECK(rec.samples.size() == 4);
}

TEST_CASE("zeno warning raised when tau <= 1/J_prime") {
    ChainSpec spec;
    spec.n_sites = 4;
    spec.J_prime = 0.05;  // 1/J' = 20
    MeasurementSchedule sched;
    sched.enabled = true;
    sched.tau = 10.0;
    const RunRecord rec =
        scheduled_evolve(spec, NoiseModel{}, sched, IntegratorConfig{}, 20.0, 10.0);
    CHECK(rec.zeno_warning);
}

TEST_CASE("selective schedule accumulates the success probability") {
    ChainSpec spec;
    spec.n_sites = 4;
    spec.J_prime = 0.1;
    MeasurementSchedule sched;
    sched.enabled = true;
    sched.tau = 15.0;
    sched.mode = MeasurementMode::selective;

    const RunRecord rec =
        scheduled_evolve(spec, NoiseModel{}, sched, IntegratorConfig{}, 45.0, 15.0);
    REQUIRE(rec.measurement_events.size() == 3);
    double prod = 1.0;
    for (const auto& ev : rec.measurement_events) prod *= ev.prob_empty;
    CHECK(rec.cumulative_success == doctest::Approx(prod));
    CHECK(rec.cumulative_success < 1.0);
    CHECK(rec.cumulative_success > 0.85);  // weak coupling leaks little
}

TEST_CASE("projected channel factor collapses to the empty state") {
    std::mt19937 rng(31337);
    const DenseCMat rho = spinchain::testing::random_density(16, rng);
    const auto [m0, m1] = channel_projector(4);
    const DenseCMat back = m0.to_dense() * rho * m0.to_dense();
    const DensityMatrix channel =
        partial_trace(DensityMatrix{4, back}, {2, 3});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != 0 || j != 0) CHECK(std::abs(channel.entries()(i, j)) < 1e-14);
    CHECK(channel.entries()(0, 0).real() > 0.0);
}
