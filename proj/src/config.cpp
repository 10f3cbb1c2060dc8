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

#include "spinchain/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace spinchain {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParameterError("invalid numeric value '" + value + "' for key '" + key + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParameterError("invalid integer value '" + value + "' for key '" + key + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ParameterError("invalid boolean value '" + value + "' for key '" + key + "'");
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

double RunConfig::effective_horizon() const {
    if (horizon >= 0.0) return horizon;
    if (spec.J_prime <= 0.0)
        throw ParameterError("default horizon 2*pi*J/J'^2 needs J_prime > 0; set horizon");
    return 2.0 * M_PI * spec.J / (spec.J_prime * spec.J_prime);
}

double RunConfig::effective_sample_dt() const {
    return sample_dt > 0.0 ? sample_dt : 1.0 / spec.J;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "n_sites") spec.n_sites = parse_int(key, value);
    else if (key == "J") spec.J = parse_double(key, value);
    else if (key == "J_prime") spec.J_prime = parse_double(key, value);
    else if (key == "gamma") spec.gamma = parse_double(key, value);
    else if (key == "n_bar") spec.n_bar = parse_double(key, value);
    else if (key == "noise_kind") spec.noise_kind = noise_kind_from_string(value);
    else if (key == "dephasing_sites") spec.dephasing_sites = dephasing_range_from_string(value);
    else if (key == "measure") schedule.enabled = parse_bool(key, value);
    else if (key == "tau") schedule.tau = parse_double(key, value);
    else if (key == "mode") schedule.mode = measurement_mode_from_string(value);
    else if (key == "first_at") schedule.first_at = parse_double(key, value);
    else if (key == "method") integrator.method = integrator_method_from_string(value);
    else if (key == "dt") integrator.dt = parse_double(key, value);
    else if (key == "tolerance") integrator.tolerance = parse_double(key, value);
    else if (key == "max_dt") integrator.max_dt = parse_double(key, value);
    else if (key == "horizon") horizon = parse_double(key, value);
    else if (key == "sample_dt") sample_dt = parse_double(key, value);
    else if (key == "engine") engine = engine_kind_from_string(value);
    else throw ParameterError("unknown config key '" + key + "'");
}

std::map<std::string, std::string> RunConfig::to_map() const {
    std::map<std::string, std::string> m;
    m["n_sites"] = std::to_string(spec.n_sites);
    m["J"] = format_double(spec.J);
    m["J_prime"] = format_double(spec.J_prime);
    m["gamma"] = format_double(spec.gamma);
    m["n_bar"] = format_double(spec.n_bar);
    m["noise_kind"] = to_string(spec.noise_kind);
    m["dephasing_sites"] = to_string(spec.dephasing_sites);
    m["measure"] = schedule.enabled ? "true" : "false";
    m["tau"] = format_double(schedule.tau);
    m["mode"] = to_string(schedule.mode);
    m["first_at"] = format_double(schedule.first_at);
    m["method"] = to_string(integrator.method);
    m["dt"] = format_double(integrator.dt);
    m["tolerance"] = format_double(integrator.tolerance);
    m["max_dt"] = format_double(integrator.max_dt);
    m["horizon"] = format_double(horizon);
    m["sample_dt"] = format_double(sample_dt);
    m["engine"] = to_string(engine);
    return m;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config line " + std::to_string(line_no) +
                                 " is not a key = value assignment: '" + line + "'");
        config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    for (const auto& [k, v] : config.to_map()) out << k << " = " << v << "\n";
    return out.str();
}

}  // namespace spinchain
