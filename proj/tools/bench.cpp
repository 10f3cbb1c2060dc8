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

// Timing harness for the evolution backends. Not part of the test suite.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "spinchain/measurement.hpp"
#include "spinchain/sector_engine.hpp"

using namespace spinchain;

int main(int argc, char** argv) {
    const int n_sites = argc > 1 ? std::atoi(argv[1]) : 10;
    const int steps = argc > 2 ? std::atoi(argv[2]) : 200;
    const double n_bar = argc > 3 ? std::atof(argv[3]) : 0.05;

    ChainSpec spec;
    spec.n_sites = n_sites;
    spec.J_prime = 0.05;
    spec.gamma = 0.02;
    spec.n_bar = n_bar;
    spec.noise_kind = NoiseKind::dissipation;

    NoiseModel noise = NoiseModel::from_spec(spec);
    IntegratorConfig config;

    SectorEngine eng(spec, noise, config);
    eng.set_initial_state();

    // warm up
    for (int i = 0; i < 5; ++i) eng.rk4_step(config.dt);

    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < steps; ++i) eng.rk4_step(config.dt);
    const auto stop = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(stop - start).count();

    const double per_step_ms = 1e3 * secs / steps;
    const double horizon = 2.0 * 3.14159265358979 * spec.J / (spec.J_prime * spec.J_prime);
    const double full_run_min = per_step_ms * (horizon / config.dt) / 60e3;
    std::printf("N=%d n_bar=%.3f  %d steps in %.3f s  (%.3f ms/step)\n", n_sites, n_bar, steps,
                secs, per_step_ms);
    std::printf("projected full horizon (%.0f/J at dt=%.3g): %.1f min\n", horizon, config.dt,
                full_run_min);
    std::printf("trace=%.12f purity=%.6f\n", eng.trace(), eng.purity());
    return 0;
}
