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

#include "spinchain/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "spinchain/entanglement.hpp"
#include "spinchain/sector_engine.hpp"

namespace spinchain {

std::string to_string(MeasurementMode m) {
    return m == MeasurementMode::nonselective ? "nonselective" : "selective";
}

MeasurementMode measurement_mode_from_string(const std::string& s) {
    if (s == "nonselective") return MeasurementMode::nonselective;
    if (s == "selective") return MeasurementMode::selective;
    throw ParameterError("unknown measurement mode '" + s + "' (nonselective|selective)");
}

std::string to_string(EngineKind e) {
    switch (e) {
        case EngineKind::automatic: return "automatic";
        case EngineKind::dense: return "dense";
        case EngineKind::sector: return "sector";
    }
    return "automatic";
}

EngineKind engine_kind_from_string(const std::string& s) {
    if (s == "automatic" || s == "auto") return EngineKind::automatic;
    if (s == "dense") return EngineKind::dense;
    if (s == "sector") return EngineKind::sector;
    throw ParameterError("unknown engine '" + s + "' (automatic|dense|sector)");
}

namespace {

std::uint64_t channel_mask_bits(int n_sites) {
    return ((std::uint64_t(1) << (n_sites - 2)) - 1) << 1;
}

}  // namespace

std::pair<QuantumOperator, QuantumOperator> channel_projector(int n_sites) {
    if (n_sites < 4) throw ParameterError("channel projector needs n_sites >= 4");
    validate_site_count(n_sites);
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    const std::uint64_t mask = channel_mask_bits(n_sites);

    std::vector<Eigen::Triplet<Complex>> t0, t1;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if ((std::uint64_t(i) & mask) == 0)
            t0.emplace_back(i, i, 1.0);
        else
            t1.emplace_back(i, i, 1.0);
    }
    SparseCMat m0(dim, dim), m1(dim, dim);
    m0.setFromTriplets(t0.begin(), t0.end());
    m1.setFromTriplets(t1.begin(), t1.end());
    return {QuantumOperator(n_sites, std::move(m0)), QuantumOperator(n_sites, std::move(m1))};
}

MeasurementOutcome apply_measurement(const DensityMatrix& rho, MeasurementMode mode) {
    const int n = rho.n_sites();
    if (n < 4) throw ParameterError("channel measurement needs a full-system state, n_sites >= 4");
    const Eigen::Index dim = rho.dim();
    const std::uint64_t mask = channel_mask_bits(n);
    auto empty = [&](Eigen::Index i) { return (std::uint64_t(i) & mask) == 0; };

    double prob = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i)
        if (empty(i)) prob += rho.entries()(i, i).real();

    DenseCMat out;
    if (mode == MeasurementMode::nonselective) {
        out = rho.entries();
        for (Eigen::Index j = 0; j < dim; ++j)
            for (Eigen::Index i = 0; i < dim; ++i)
                if (empty(i) != empty(j)) out(i, j) = 0.0;
    } else {
        if (prob < 1e-12)
            throw NumericalError("selective measurement branch has vanishing probability " +
                                 std::to_string(prob));
        out = DenseCMat::Zero(dim, dim);
        for (Eigen::Index j = 0; j < dim; ++j)
            if (empty(j))
                for (Eigen::Index i = 0; i < dim; ++i)
                    if (empty(i)) out(i, j) = rho.entries()(i, j) / prob;
    }
    return {DensityMatrix{n, std::move(out)}, prob};
}

namespace {

/// Full dense backend with the same stepping interface as SectorEngine.
class DenseEngine {
public:
    DenseEngine(const ChainSpec& spec, const NoiseModel& noise, const IntegratorConfig& config)
        : spec_(spec), config_(config), op_(total_hamiltonian(spec), noise),
          rho_(initial_state(spec)) {}

    void set_initial_state() { rho_ = initial_state(spec_); }

    void rk4_step(double h) {
        rho_ = hermitize(DensityMatrix{spec_.n_sites, rk4_step_dense(op_, rho_.entries(), h)});
    }

    void rk45_step(double& t, double& dt, double t_end) {
        rho_ = hermitize(DensityMatrix{
            spec_.n_sites, rk45_step_dense(op_, rho_.entries(), t, dt, t_end, config_)});
    }

    double measure(MeasurementMode mode) {
        MeasurementOutcome out = apply_measurement(rho_, mode);
        rho_ = std::move(out.state);
        return out.prob_empty;
    }

    Eigen::Matrix4cd end_pair_state() const {
        return partial_trace(rho_, {1, spec_.n_sites}).entries();
    }

    double trace() const { return rho_.trace().real(); }
    double purity() const { return (rho_.entries() * rho_.entries()).trace().real(); }
    double hermiticity_error() const {
        return (rho_.entries() - rho_.entries().adjoint()).cwiseAbs().maxCoeff();
    }
    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<DenseCMat> es(
            DenseCMat(0.5 * (rho_.entries() + rho_.entries().adjoint())), Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

private:
    ChainSpec spec_;
    IntegratorConfig config_;
    LindbladOperator op_;
    DensityMatrix rho_;
};

constexpr double kTimeEps = 1e-9;

template <class Engine>
void advance_to(Engine& eng, const IntegratorConfig& config, double& t, double& adaptive_dt,
                double target) {
    if (config.method == IntegratorConfig::Method::rk4_fixed) {
        while (t < target - kTimeEps) {
            const double h = std::min(config.dt, target - t);
            eng.rk4_step(h);
            t += h;
        }
    } else {
        while (t < target - kTimeEps) eng.rk45_step(t, adaptive_dt, target);
    }
    t = target;
}

template <class Engine>
RunRecord run_timeline(Engine& eng, const ChainSpec& spec, const NoiseModel& noise,
                       const MeasurementSchedule& schedule, const IntegratorConfig& config,
                       double t_span, double sample_dt, const char* engine_name) {
    RunRecord rec;
    rec.spec = spec;
    rec.noise = noise;
    rec.schedule = schedule;
    rec.integrator = config;
    rec.horizon = t_span;
    rec.sample_dt = sample_dt;
    rec.engine = engine_name;
    rec.zeno_warning = schedule.zeno_regime(spec.J_prime);

    eng.set_initial_state();

    // full-state eigenvalue checks near the quarter marks of the run
    std::vector<double> checkpoints;
    for (double f : {0.25, 0.5, 0.75, 1.0})
        if (f * t_span > 0.0) checkpoints.push_back(f * t_span);
    std::size_t next_checkpoint = 0;

    const double infinity = std::numeric_limits<double>::infinity();
    double t = 0.0;
    double adaptive_dt = config.dt;
    long sample_idx = 0;
    long meas_idx = 0;

    for (;;) {
        const double t_sample = double(sample_idx) * sample_dt;
        const double t_meas =
            schedule.enabled ? schedule.first_time() + double(meas_idx) * schedule.tau : infinity;
        double target = std::min({t_sample, t_meas, t_span});

        advance_to(eng, config, t, adaptive_dt, target);

        if (schedule.enabled && std::abs(target - t_meas) <= kTimeEps && t_meas <= t_span + kTimeEps) {
            const double p = eng.measure(schedule.mode);
            rec.measurement_events.push_back({t, p});
            if (schedule.mode == MeasurementMode::selective) rec.cumulative_success *= p;
            ++meas_idx;
        }
        if (std::abs(target - t_sample) <= kTimeEps && t_sample <= t_span + kTimeEps) {
            const Eigen::Matrix4cd pair = eng.end_pair_state();
            const ConcurrenceResult conc = concurrence(DensityMatrix{2, pair});
            Sample s;
            s.t = t;
            s.concurrence = conc.value;
            s.trace_error = std::abs(eng.trace() - 1.0);
            s.purity = eng.purity();
            rec.samples.push_back(s);
            if (conc.value > rec.max_concurrence) {
                rec.max_concurrence = conc.value;
                rec.t_of_max = t;
            }
            rec.max_trace_error = std::max(rec.max_trace_error, s.trace_error);
            rec.max_hermiticity_error =
                std::max(rec.max_hermiticity_error, eng.hermiticity_error());
            ++sample_idx;
        }
        while (next_checkpoint < checkpoints.size() &&
               t >= checkpoints[next_checkpoint] - kTimeEps) {
            rec.min_eigenvalue = std::min(rec.min_eigenvalue, eng.min_eigenvalue());
            ++next_checkpoint;
        }
        if (t >= t_span - kTimeEps) break;
    }
    return rec;
}

}  // namespace

RunRecord scheduled_evolve(const ChainSpec& spec, const NoiseModel& noise,
                           const MeasurementSchedule& schedule, const IntegratorConfig& config,
                           double t_span, double sample_dt, EngineKind engine) {
    spec.validate();
    noise.validate(spec.n_sites);
    schedule.validate();
    config.validate();
    if (t_span < 0.0) throw ParameterError("t_span must be nonnegative");
    if (!(sample_dt > 0.0)) throw ParameterError("sample_dt must be positive");

    const EngineKind kind = engine == EngineKind::automatic ? EngineKind::sector : engine;
    if (kind == EngineKind::sector) {
        SectorEngine eng(spec, noise, config);
        return run_timeline(eng, spec, noise, schedule, config, t_span, sample_dt, "sector");
    }
    DenseEngine eng(spec, noise, config);
    return run_timeline(eng, spec, noise, schedule, config, t_span, sample_dt, "dense");
}

}  // namespace spinchain
