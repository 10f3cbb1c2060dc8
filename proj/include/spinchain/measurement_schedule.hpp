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

#include "spinchain/errors.hpp"

namespace spinchain {

enum class MeasurementMode { nonselective, selective };

std::string to_string(MeasurementMode m);
MeasurementMode measurement_mode_from_string(const std::string& s);

/// Regular global projective measurements of the channel at intervals tau.
/// Runs with tau <= 1/J' are flagged as Zeno-regime (repeated projection
/// freezes the effective dynamics there).
struct MeasurementSchedule {
    bool enabled = false;
    double tau = 150.0;
    MeasurementMode mode = MeasurementMode::nonselective;
    double first_at = -1.0;  ///< negative means "at tau"

    double first_time() const { return first_at >= 0.0 ? first_at : tau; }
    void validate() const {
        if (!(tau > 0.0)) throw ParameterError("measurement interval tau must be positive");
    }
    bool zeno_regime(double J_prime) const {
        return enabled && J_prime > 0.0 && tau <= 1.0 / J_prime;
    }
};

}  // namespace spinchain
