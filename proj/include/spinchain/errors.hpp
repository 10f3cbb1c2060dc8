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

#include <stdexcept>
#include <string>

namespace spinchain {

/// Invalid user-supplied parameter (bad site index, dimension mismatch,
/// malformed config). CLI exit code 1.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical-validity failure (eigenvalue checks, measurement on a
/// zero-probability branch, integrator breakdown). CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive integration could not reach the requested tolerance.
class IntegrationError : public NumericalError {
public:
    IntegrationError(const std::string& what, double t, double dt, double err)
        : NumericalError(what + " [t=" + std::to_string(t) + ", dt=" + std::to_string(dt) +
                         ", err=" + std::to_string(err) + "]"),
          t_fail(t), dt_fail(dt), err_estimate(err) {}
    double t_fail;
    double dt_fail;
    double err_estimate;
};

/// Filesystem / serialization failure. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int parameter = 1;
inline constexpr int numerical = 2;
inline constexpr int io = 3;
}  // namespace exit_code

}  // namespace spinchain
