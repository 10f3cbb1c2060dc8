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

#include <utility>

#include "spinchain/density.hpp"
#include "spinchain/dynamics.hpp"
#include "spinchain/measurement_schedule.hpp"
#include "spinchain/run_record.hpp"

namespace spinchain {

/// (M0, M1): M0 projects the channel onto its empty (all |0>) state while
/// leaving the end qubits untouched; M1 = I - M0.
std::pair<QuantumOperator, QuantumOperator> channel_projector(int n_sites);

struct MeasurementOutcome {
    DensityMatrix state;
    double prob_empty = 0.0;  ///< tr(M0 rho M0)
};

/// Global channel measurement. Nonselective replaces rho by
/// M0 rho M0 + M1 rho M1 (trace preserved exactly); selective keeps the M0
/// branch renormalized and reports its probability. Selective measurement of
/// a branch with probability below 1e-12 raises NumericalError.
MeasurementOutcome apply_measurement(const DensityMatrix& rho, MeasurementMode mode);

enum class EngineKind { automatic, dense, sector };

std::string to_string(EngineKind e);
EngineKind engine_kind_from_string(const std::string& s);

/// Evolves the standard initial state |+>|0_ch>|+> of `spec` under its
/// master equation for t_span, applying the measurement schedule, and
/// records the end-to-end concurrence at every multiple of sample_dt.
/// Measurement events that coincide with a sample time are applied before
/// the sample is recorded.
///
/// `engine` selects the backend: `dense` propagates the full 2^N density
/// matrix; `sector` propagates the exact decomposition of the state into
/// excitation-sector blocks (identical trajectories, much faster);
/// `automatic` picks `sector`.
RunRecord scheduled_evolve(const ChainSpec& spec, const NoiseModel& noise,
                           const MeasurementSchedule& schedule, const IntegratorConfig& config,
                           double t_span, double sample_dt,
                           EngineKind engine = EngineKind::automatic);

}  // namespace spinchain
