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

#include <string>
#include <vector>

#include "spinchain/dynamics.hpp"
#include "spinchain/measurement_schedule.hpp"
#include "spinchain/model.hpp"

namespace spinchain {

struct Sample {
    double t = 0.0;
    double concurrence = 0.0;
    double trace_error = 0.0;
    double purity = 0.0;
};

struct MeasurementEvent {
    double t = 0.0;
    double prob_empty = 0.0;
};

/// Full sampled trajectory of one run plus summary diagnostics.
struct RunRecord {
    ChainSpec spec;
    NoiseModel noise;
    MeasurementSchedule schedule;
    IntegratorConfig integrator;
    double horizon = 0.0;
    double sample_dt = 1.0;
    std::string engine;  ///< backend that produced the run

    std::vector<Sample> samples;                      ///< strictly increasing in t
    std::vector<MeasurementEvent> measurement_events;

    double max_concurrence = 0.0;
    double t_of_max = 0.0;
    double cumulative_success = 1.0;  ///< product of prob_empty (selective mode only)
    bool zeno_warning = false;

    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 1.0;  ///< smallest full-state eigenvalue over checkpoints
};

}  // namespace spinchain
