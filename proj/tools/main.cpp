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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "spinchain/experiments.hpp"
#include "spinchain/version.hpp"

using namespace spinchain;

namespace {

std::pair<std::string, std::string> split_assignment(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw ParameterError("expected key=value, got '" + text + "'");
    return {text.substr(0, eq), text.substr(eq + 1)};
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

RunConfig build_config(const std::string& config_path,
                       const std::vector<std::string>& sets) {
    RunConfig config;
    if (!config_path.empty()) config = load_config_file(config_path);
    for (const std::string& s : sets) {
        const auto [k, v] = split_assignment(s);
        config.set(k, v);
    }
    return config;
}

void print_summary(const RunRecord& rec) {
    std::printf("engine=%s samples=%zu events=%zu\n", rec.engine.c_str(), rec.samples.size(),
                rec.measurement_events.size());
    std::printf("max_concurrence=%.12g at t=%.6g\n", rec.max_concurrence, rec.t_of_max);
    if (rec.schedule.enabled && rec.schedule.mode == MeasurementMode::selective)
        std::printf("cumulative_success=%.12g\n", rec.cumulative_success);
    if (rec.zeno_warning)
        std::printf("warning: tau <= 1/J' puts this run in the Zeno regime\n");
    std::printf("max_trace_error=%.3g max_hermiticity_error=%.3g min_eigenvalue=%.3g\n",
                rec.max_trace_error, rec.max_hermiticity_error, rec.min_eigenvalue);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Measured dissipative XX spin-chain entanglement simulator"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    int threads = 1;
    app.add_option("--threads", threads, "worker threads for sweeps")->capture_default_str();

    // simulate
    auto* sim = app.add_subcommand("simulate", "run one trajectory and write plot data");
    std::string sim_config, sim_out = "out";
    std::vector<std::string> sim_sets;
    bool sim_no_measure = false;
    double sim_tau = -1.0;
    sim->add_option("--config", sim_config, "flat key = value config file");
    sim->add_option("--set", sim_sets, "override, key=value (repeatable)");
    sim->add_flag("--no-measure", sim_no_measure, "disable the measurement schedule");
    sim->add_option("--tau", sim_tau, "measurement interval (enables the schedule)");
    sim->add_option("--out", sim_out, "output directory")->capture_default_str();

    // sweep
    auto* sw = app.add_subcommand("sweep", "Cartesian parameter sweep");
    std::string sw_config, sw_out = "out", sw_name = "sweep";
    std::vector<std::string> sw_sets, sw_axes;
    sw->add_option("--config", sw_config, "flat key = value config file");
    sw->add_option("--set", sw_sets, "override, key=value (repeatable)");
    sw->add_option("--axis", sw_axes, "axis, name=v1,v2,... (repeatable)")->required();
    sw->add_option("--out", sw_out, "output directory")->capture_default_str();
    sw->add_option("--name", sw_name, "output subdirectory name")->capture_default_str();

    // figures
    auto* figs = app.add_subcommand("figures", "regenerate the published curve bundles");
    std::string fig_name, fig_out = "out";
    bool fig_all = false;
    std::vector<std::string> fig_sets;
    figs->add_option("--name", fig_name, "one of fig1a..fig6");
    figs->add_flag("--all", fig_all, "run every scenario");
    figs->add_option("--set", fig_sets, "override, key=value (repeatable)");
    figs->add_option("--out", fig_out, "output directory")->capture_default_str();

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
    std::string oracle_kind;
    oracle->add_option("--kind", oracle_kind, "liouvillian_n4|single_qubit_steady|effective_model")
        ->required();

    try {
        app.parse(argc, argv);

        if (sim->parsed()) {
            RunConfig config = build_config(sim_config, sim_sets);
            if (sim_tau >= 0.0) {
                config.schedule.enabled = true;
                config.schedule.tau = sim_tau;
            }
            if (sim_no_measure) config.schedule.enabled = false;
            const RunRecord rec = run_config(config);
            const auto files = emit_plot_data(config, {{"concurrence", rec}}, sim_out, "run");
            print_summary(rec);
            for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
        } else if (sw->parsed()) {
            SweepSpec spec;
            spec.base = build_config(sw_config, sw_sets);
            std::vector<std::string> axis_names;
            for (const std::string& axis : sw_axes) {
                const auto [name, values] = split_assignment(axis);
                spec.axes.emplace_back(name, split_list(values));
                axis_names.push_back(name);
            }
            const auto rows = sweep(spec, threads);
            std::error_code ec;
            const std::filesystem::path dir = std::filesystem::path(sw_out) / sw_name;
            std::filesystem::create_directories(dir, ec);
            if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
            write_sweep_csv(rows, axis_names, dir / "sweep.csv");
            std::map<std::string, const RunRecord*> refs;
            if (!rows.empty()) refs["last_point"] = &rows.back().record;
            write_meta_json(spec.base, refs, dir / "meta.json");
            std::printf("%zu sweep points -> %s\n", rows.size(), (dir / "sweep.csv").c_str());
        } else if (figs->parsed()) {
            std::vector<std::pair<std::string, std::string>> overrides;
            for (const std::string& s : fig_sets) overrides.push_back(split_assignment(s));
            std::vector<std::string> names;
            if (fig_all) names = scenario_names();
            else if (!fig_name.empty()) names.push_back(fig_name);
            else throw ParameterError("figures needs --name or --all");
            for (const std::string& n : names) {
                const auto files = run_scenario(n, fig_out, threads, overrides);
                for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
            }
        } else if (oracle->parsed()) {
            const OracleReport rep = oracle_check(oracle_kind);
            std::printf("%s: max_deviation=%.3e tolerance=%.3e %s\n", rep.kind.c_str(),
                        rep.max_deviation, rep.tolerance, rep.pass ? "pass" : "FAIL");
            if (!rep.pass) return exit_code::numerical;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ParameterError& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return exit_code::parameter;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return exit_code::numerical;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return exit_code::io;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code::numerical;
    }
    return exit_code::ok;
}
