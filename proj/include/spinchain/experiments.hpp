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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "spinchain/config.hpp"
#include "spinchain/run_record.hpp"

namespace spinchain {

/// One run with the configured schedule and horizon.
RunRecord run_config(const RunConfig& config);

/// Cartesian-product parameter sweep. Axis names come from a fixed
/// whitelist; rows are produced in row-major grid order (first axis
/// outermost) regardless of how workers interleave.
struct SweepSpec {
    RunConfig base;
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    std::size_t max_points = 10000;
};

struct SweepRow {
    std::size_t index = 0;
    std::vector<std::pair<std::string, std::string>> values;  ///< axis name -> value
    RunRecord record;
};

extern const std::vector<std::string> kSweepAxisWhitelist;

std::vector<SweepRow> sweep(const SweepSpec& spec, int threads = 1);

/// Trajectory CSV: t, concurrence, trace_error, purity (17 significant digits).
void write_run_csv(const RunRecord& record, const std::filesystem::path& path);
/// Sweep CSV: one row per grid point: axis values, max_concurrence, t_of_max.
void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::vector<std::string>& axis_names,
                     const std::filesystem::path& path);
/// Provenance sidecar: full configuration, software version, summary
/// numbers and measurement events for every curve of a scenario.
void write_meta_json(const RunConfig& config,
                     const std::map<std::string, const RunRecord*>& curves,
                     const std::filesystem::path& path);

/// Writes `<out>/<name>/<curve>.csv` files plus `meta.json` and returns the
/// paths written.
std::vector<std::string> emit_plot_data(const RunConfig& config,
                                        const std::map<std::string, RunRecord>& curves,
                                        const std::filesystem::path& out_dir,
                                        const std::string& name);

struct OracleReport {
    std::string kind;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Brute-force cross-checks: "liouvillian_n4" (dense matrix-exponential
/// propagation at N=4), "single_qubit_steady" (thermal rate-equation steady
/// state), "effective_model" (two-qubit reduction at N=8). Failures are
/// reported, not thrown.
OracleReport oracle_check(const std::string& kind);
std::vector<std::string> oracle_kinds();

/// Curve bundles reproducing the published parameter sets. `overrides` are
/// config assignments applied on top of each run (dt, engine, horizon...).
/// Some scenarios are long computations at full scale; see the README table.
std::vector<std::string> run_scenario(const std::string& name,
                                      const std::filesystem::path& out_dir, int threads = 1,
                                      const std::vector<std::pair<std::string, std::string>>&
                                          overrides = {});
std::vector<std::string> scenario_names();

}  // namespace spinchain
