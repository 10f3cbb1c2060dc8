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

#include <map>
#include <optional>
#include <string>

#include "spinchain/dynamics.hpp"
#include "spinchain/measurement.hpp"
#include "spinchain/model.hpp"

namespace spinchain {

/// Everything one run needs. The file format is flat `key = value` lines
/// (# comments), keys mirroring the field names below; command-line flags
/// override file values.
struct RunConfig {
    ChainSpec spec;
    MeasurementSchedule schedule;
    IntegratorConfig integrator;
    double horizon = -1.0;    ///< negative: use 2*pi*J/J'^2
    double sample_dt = -1.0;  ///< negative: use 1/J
    EngineKind engine = EngineKind::automatic;

    NoiseModel noise() const { return NoiseModel::from_spec(spec); }
    double effective_horizon() const;
    double effective_sample_dt() const;

    /// Applies one key=value assignment; unknown keys raise ParameterError.
    void set(const std::string& key, const std::string& value);
    std::map<std::string, std::string> to_map() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& config);

}  // namespace spinchain
