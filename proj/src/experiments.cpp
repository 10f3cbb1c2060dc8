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

#include "spinchain/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "json.hpp"

#include "spinchain/brute_force.hpp"
#include "spinchain/entanglement.hpp"
#include "spinchain/sector_engine.hpp"
#include "spinchain/version.hpp"

namespace spinchain {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RunRecord run_config(const RunConfig& config) {
    return scheduled_evolve(config.spec, config.noise(), config.schedule, config.integrator,
                            config.effective_horizon(), config.effective_sample_dt(),
                            config.engine);
}

const std::vector<std::string> kSweepAxisWhitelist = {"J_prime", "gamma",   "n_bar",
                                                      "tau",     "n_sites", "mode"};

std::vector<SweepRow> sweep(const SweepSpec& spec, int threads) {
    for (const auto& [name, values] : spec.axes) {
        if (std::find(kSweepAxisWhitelist.begin(), kSweepAxisWhitelist.end(), name) ==
            kSweepAxisWhitelist.end())
            throw ParameterError("sweep axis '" + name + "' is not in the whitelist");
        if (values.empty()) throw ParameterError("sweep axis '" + name + "' has no values");
    }

    std::size_t total = 1;
    for (const auto& [name, values] : spec.axes) {
        if (total > spec.max_points / values.size() + 1) total = spec.max_points + 1;
        else total *= values.size();
    }
    if (total > spec.max_points)
        throw ParameterError("sweep grid exceeds the cap of " + std::to_string(spec.max_points) +
                             " points");

    std::vector<SweepRow> rows(total);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total || failed.load()) break;
            try {
                RunConfig point = spec.base;
                SweepRow row;
                row.index = idx;
                // row-major: first axis outermost
                std::size_t rest = idx;
                std::size_t stride = total;
                for (const auto& [name, values] : spec.axes) {
                    stride /= values.size();
                    const std::size_t pos = rest / stride;
                    rest %= stride;
                    point.set(name, values[pos]);
                    row.values.emplace_back(name, values[pos]);
                }
                row.record = run_config(point);
                rows[idx] = std::move(row);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed.store(true);
                if (error_message.empty()) error_message = e.what();
            }
        }
    };

    const int n_workers = std::max(1, std::min<int>(threads, int(total)));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw NumericalError("sweep point failed: " + error_message);
    return rows;
}

void write_run_csv(const RunRecord& record, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << "t,concurrence,trace_error,purity\n";
    for (const Sample& s : record.samples)
        out << fmt17(s.t) << ',' << fmt17(s.concurrence) << ',' << fmt17(s.trace_error) << ','
            << fmt17(s.purity) << '\n';
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::vector<std::string>& axis_names,
                     const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    for (const std::string& a : axis_names) out << a << ',';
    out << "max_concurrence,t_of_max\n";
    for (const SweepRow& row : rows) {
        for (const auto& [name, value] : row.values) out << value << ',';
        out << fmt17(row.record.max_concurrence) << ',' << fmt17(row.record.t_of_max) << '\n';
    }
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

nlohmann::json record_summary(const RunRecord& rec) {
    nlohmann::json j;
    j["engine"] = rec.engine;
    j["horizon"] = rec.horizon;
    j["sample_dt"] = rec.sample_dt;
    j["max_concurrence"] = rec.max_concurrence;
    j["t_of_max"] = rec.t_of_max;
    j["zeno_warning"] = rec.zeno_warning;
    j["cumulative_success"] = rec.cumulative_success;
    j["max_trace_error"] = rec.max_trace_error;
    j["max_hermiticity_error"] = rec.max_hermiticity_error;
    j["min_eigenvalue"] = rec.min_eigenvalue;
    j["n_samples"] = rec.samples.size();
    nlohmann::json events = nlohmann::json::array();
    for (const MeasurementEvent& ev : rec.measurement_events)
        events.push_back({{"t", ev.t}, {"prob_empty", ev.prob_empty}});
    j["measurement_events"] = std::move(events);
    return j;
}

}  // namespace

void write_meta_json(const RunConfig& config,
                     const std::map<std::string, const RunRecord*>& curves,
                     const std::filesystem::path& path) {
    nlohmann::json j;
    j["generator"] = "spinchain";
    j["version"] = kVersion;
    j["config"] = config.to_map();
    nlohmann::json jc;
    for (const auto& [name, rec] : curves) jc[name] = record_summary(*rec);
    j["curves"] = std::move(jc);
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::string> emit_plot_data(const RunConfig& config,
                                        const std::map<std::string, RunRecord>& curves,
                                        const std::filesystem::path& out_dir,
                                        const std::string& name) {
    std::error_code ec;
    const std::filesystem::path dir = out_dir / name;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");

    std::vector<std::string> written;
    std::map<std::string, const RunRecord*> refs;
    for (const auto& [curve, rec] : curves) {
        const std::filesystem::path csv = dir / (curve + ".csv");
        write_run_csv(rec, csv);
        written.push_back(csv.string());
        refs[curve] = &rec;
    }
    const std::filesystem::path meta = dir / "meta.json";
    write_meta_json(config, refs, meta);
    written.push_back(meta.string());
    return written;
}

std::vector<std::string> oracle_kinds() {
    return {"liouvillian_n4", "single_qubit_steady", "effective_model"};
}

OracleReport oracle_check(const std::string& kind) {
    OracleReport report;
    report.kind = kind;

    if (kind == "liouvillian_n4") {
        report.tolerance = 1e-6;
        double dev = 0.0;
        for (NoiseKind noise_kind : {NoiseKind::dissipation, NoiseKind::dephasing}) {
            ChainSpec spec;
            spec.n_sites = 4;
            spec.J_prime = 0.05;
            spec.noise_kind = noise_kind;
            spec.gamma = 0.05;
            spec.n_bar = noise_kind == NoiseKind::dissipation ? 0.1 : 0.0;
            const QuantumOperator h = total_hamiltonian(spec);
            const NoiseModel noise = NoiseModel::from_spec(spec);
            const DensityMatrix rho0 = initial_state(spec);
            const DenseCMat liou = build_liouvillian(h, noise);
            IntegratorConfig config;
            for (double t : {1.0, 10.0, 100.0}) {
                const DensityMatrix got = evolve(rho0, h, noise, config, t, t);
                const DenseCMat want = propagate_exact(liou, rho0.entries(), t);
                dev = std::max(dev, (got.entries() - want).cwiseAbs().maxCoeff());
            }
        }
        report.max_deviation = dev;
    } else if (kind == "single_qubit_steady") {
        report.tolerance = 1e-6;
        double dev = 0.0;
        for (double n_bar : {0.05, 0.1}) {
            NoiseModel noise;
            noise.kind = NoiseKind::dissipation;
            noise.gamma = 1.0;
            noise.n_bar = n_bar;
            noise.jump_sites = {1};
            DenseCMat excited = DenseCMat::Zero(2, 2);
            excited(1, 1) = 1.0;
            IntegratorConfig config;
            const DensityMatrix rho = evolve(DensityMatrix{1, excited}, QuantumOperator::zero(1),
                                             noise, config, 40.0, 40.0);
            dev = std::max(dev,
                           std::abs(rho.entries()(1, 1).real() - n_bar / (2.0 * n_bar + 1.0)));
        }
        report.max_deviation = dev;
    } else if (kind == "effective_model") {
        report.tolerance = 0.1;
        ChainSpec spec;
        spec.n_sites = 8;
        spec.J_prime = 0.05;
        const double J_e = effective_coupling(spec);
        const double horizon = M_PI / std::abs(J_e);
        const RunRecord rec = scheduled_evolve(spec, NoiseModel::from_spec(spec),
                                               MeasurementSchedule{}, IntegratorConfig{}, horizon,
                                               1.0);
        double dev = 0.0;
        for (const Sample& s : rec.samples)
            dev = std::max(dev, std::abs(s.concurrence - effective_model_concurrence(s.t, J_e)));
        report.max_deviation = dev;
    } else {
        throw ParameterError("unknown oracle kind '" + kind +
                             "' (liouvillian_n4|single_qubit_steady|effective_model)");
    }
    report.pass = report.max_deviation <= report.tolerance;
    return report;
}

namespace {

RunConfig paper_base() {
    RunConfig c;
    c.spec.n_sites = 10;
    c.spec.J = 1.0;
    c.spec.J_prime = 0.05;
    c.schedule.tau = 150.0;
    c.schedule.mode = MeasurementMode::nonselective;
    return c;
}

std::vector<std::string> tau_grid() {
    return {"5",  "10", "15", "20",  "25",  "30",  "40", "50",
            "75", "100", "150", "200", "300", "400", "500"};
}

void apply_overrides(RunConfig& config,
                     const std::vector<std::pair<std::string, std::string>>& overrides) {
    for (const auto& [k, v] : overrides) config.set(k, v);
}

std::vector<std::string> emit_sweep_scenario(
    const std::string& name, const RunConfig& base,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& axes,
    const std::map<std::string, SweepSpec>& curves, const std::filesystem::path& out_dir,
    int threads) {
    std::error_code ec;
    const std::filesystem::path dir = out_dir / name;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");

    std::vector<std::string> written;
    std::map<std::string, const RunRecord*> meta_refs;
    std::map<std::string, RunRecord> keep_alive;
    for (const auto& [curve, spec] : curves) {
        const std::vector<SweepRow> rows = sweep(spec, threads);
        std::vector<std::string> axis_names;
        for (const auto& [axis, values] : spec.axes) axis_names.push_back(axis);
        const std::filesystem::path csv = dir / (curve + ".csv");
        write_sweep_csv(rows, axis_names, csv);
        written.push_back(csv.string());
        if (!rows.empty()) keep_alive[curve] = rows.back().record;
    }
    for (const auto& [curve, rec] : keep_alive) meta_refs[curve] = &rec;
    const std::filesystem::path meta = dir / "meta.json";
    write_meta_json(base, meta_refs, meta);
    written.push_back(meta.string());
    (void)axes;
    return written;
}

}  // namespace

std::vector<std::string> scenario_names() {
    return {"fig1a", "fig1b", "fig2a", "fig2b", "fig3", "fig4", "fig5a", "fig5b", "fig6"};
}

std::vector<std::string> run_scenario(
    const std::string& name, const std::filesystem::path& out_dir, int threads,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
    if (name == "fig1a") {
        // max entanglement versus J'/J for the noiseless chain
        RunConfig base = paper_base();
        apply_overrides(base, overrides);
        SweepSpec spec;
        spec.base = base;
        std::vector<std::string> values;
        for (int i = 1; i <= 20; ++i) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%.2f", 0.01 * i);
            values.push_back(buf);
        }
        spec.axes = {{"J_prime", values}};
        return emit_sweep_scenario(name, base, spec.axes, {{"max_vs_j_prime", spec}}, out_dir,
                                   threads);
    }
    if (name == "fig1b") {
        RunConfig base = paper_base();
        apply_overrides(base, overrides);
        std::map<std::string, RunRecord> curves;
        curves["concurrence"] = run_config(base);
        return emit_plot_data(base, curves, out_dir, name);
    }
    if (name == "fig2a" || name == "fig2b") {
        RunConfig base = paper_base();
        base.schedule.enabled = true;
        if (name == "fig2b") {
            base.spec.noise_kind = NoiseKind::dissipation;
            base.spec.gamma = 0.05;
            base.spec.n_bar = 0.05;
        }
        apply_overrides(base, overrides);
        SweepSpec spec;
        spec.base = base;
        spec.axes = {{"tau", tau_grid()}};
        return emit_sweep_scenario(name, base, spec.axes, {{"max_vs_tau", spec}}, out_dir,
                                   threads);
    }
    if (name == "fig3" || name == "fig4") {
        RunConfig base = paper_base();
        base.spec.noise_kind = NoiseKind::dissipation;
        base.spec.gamma = 0.02;
        base.spec.n_bar = name == "fig3" ? 0.05 : 0.1;
        apply_overrides(base, overrides);

        RunConfig measured = base;
        measured.schedule.enabled = true;
        RunConfig unmeasured = base;
        unmeasured.schedule.enabled = false;
        std::map<std::string, RunRecord> curves;
        curves["measured"] = run_config(measured);
        curves["unmeasured"] = run_config(unmeasured);
        return emit_plot_data(base, curves, out_dir, name);
    }
    if (name == "fig5a") {
        RunConfig base = paper_base();
        base.spec.noise_kind = NoiseKind::dissipation;
        base.spec.n_bar = 0.05;
        apply_overrides(base, overrides);
        const std::vector<std::string> gammas = {"0",    "0.005", "0.01", "0.02",
                                                 "0.03", "0.04",  "0.05"};
        SweepSpec measured;
        measured.base = base;
        measured.base.schedule.enabled = true;
        measured.axes = {{"gamma", gammas}};
        SweepSpec unmeasured;
        unmeasured.base = base;
        unmeasured.base.schedule.enabled = false;
        unmeasured.axes = {{"gamma", gammas}};
        return emit_sweep_scenario(name, base, measured.axes,
                                   {{"measured", measured}, {"unmeasured", unmeasured}}, out_dir,
                                   threads);
    }
    if (name == "fig5b") {
        RunConfig base = paper_base();
        base.spec.noise_kind = NoiseKind::dissipation;
        base.spec.gamma = 0.02;
        base.spec.n_bar = 0.05;
        apply_overrides(base, overrides);
        const std::vector<std::string> even = {"4", "6", "8", "10"};
        const std::vector<std::string> odd = {"5", "7", "9", "11"};
        std::map<std::string, SweepSpec> curves;
        for (const bool measured : {true, false}) {
            for (const bool use_even : {true, false}) {
                SweepSpec s;
                s.base = base;
                s.base.schedule.enabled = measured;
                s.axes = {{"n_sites", use_even ? even : odd}};
                const std::string curve = std::string(use_even ? "even" : "odd") + "_" +
                                          (measured ? "measured" : "unmeasured");
                curves[curve] = std::move(s);
            }
        }
        return emit_sweep_scenario(name, base, {{"n_sites", even}}, curves, out_dir, threads);
    }
    if (name == "fig6") {
        RunConfig base = paper_base();
        base.spec.noise_kind = NoiseKind::dephasing;
        base.spec.gamma = 0.02;
        base.schedule.tau = 500.0;
        apply_overrides(base, overrides);
        RunConfig measured = base;
        measured.schedule.enabled = true;
        RunConfig unmeasured = base;
        unmeasured.schedule.enabled = false;
        std::map<std::string, RunRecord> curves;
        curves["measured"] = run_config(measured);
        curves["unmeasured"] = run_config(unmeasured);
        return emit_plot_data(base, curves, out_dir, name);
    }
    throw ParameterError("unknown scenario '" + name + "'");
}

}  // namespace spinchain
