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

#include "spinchain/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace spinchain {

NoiseModel NoiseModel::from_spec(const ChainSpec& spec) {
    NoiseModel n;
    n.kind = spec.noise_kind;
    n.gamma = spec.gamma;
    n.n_bar = spec.n_bar;
    n.jump_sites = spec.jump_sites();
    n.validate(spec.n_sites);
    return n;
}

void NoiseModel::validate(int n_sites) const {
    if (gamma < 0.0) throw ParameterError("gamma must be nonnegative");
    if (n_bar < 0.0) throw ParameterError("n_bar must be nonnegative");
    for (int s : jump_sites)
        if (s < 1 || s > n_sites)
            throw ParameterError("jump site " + std::to_string(s) + " out of range 1.." +
                                 std::to_string(n_sites));
}

void IntegratorConfig::validate() const {
    if (!(dt > 0.0)) throw ParameterError("integrator dt must be positive");
    if (!(tolerance > 0.0)) throw ParameterError("integrator tolerance must be positive");
    if (!(max_dt > 0.0) || dt > max_dt) throw ParameterError("require 0 < dt <= max_dt");
}

std::string to_string(IntegratorConfig::Method m) {
    return m == IntegratorConfig::Method::rk4_fixed ? "rk4_fixed" : "rk45_adaptive";
}

IntegratorConfig::Method integrator_method_from_string(const std::string& s) {
    if (s == "rk4_fixed" || s == "rk4") return IntegratorConfig::Method::rk4_fixed;
    if (s == "rk45_adaptive" || s == "rk45") return IntegratorConfig::Method::rk45_adaptive;
    throw ParameterError("unknown integrator method '" + s + "' (rk4_fixed|rk45_adaptive)");
}

LindbladOperator::LindbladOperator(QuantumOperator H, NoiseModel noise)
    : ham_(std::move(H)), noise_(std::move(noise)) {
    noise_.validate(ham_.n_sites());
    if (!noise_.active()) return;
    const Eigen::Matrix2cd local = noise_.kind == NoiseKind::dissipation
                                       ? pauli::sigma_minus()
                                       : pauli::sigma_z();
    for (int site : noise_.jump_sites) {
        QuantumOperator L = embed_site_operator(local, site, ham_.n_sites());
        QuantumOperator Ldag = L.adjoint();
        Jump j;
        j.L = L.matrix();
        j.Ldag = Ldag.matrix();
        j.LdagL = (Ldag * L).matrix();
        j.LLdag = (L * Ldag).matrix();
        jumps_.push_back(std::move(j));
    }
}

DenseCMat LindbladOperator::apply(const DenseCMat& rho) const {
    if (rho.rows() != dim() || rho.cols() != dim())
        throw ParameterError("state dimension does not match the Hamiltonian");
    const Complex mi(0.0, -1.0);
    DenseCMat out = mi * (ham_.matrix() * rho - rho * ham_.matrix());
    if (jumps_.empty()) return out;

    const double g2 = 0.5 * noise_.gamma;
    const double w_down = noise_.kind == NoiseKind::dissipation ? g2 * (noise_.n_bar + 1.0) : g2;
    const double w_up = noise_.kind == NoiseKind::dissipation ? g2 * noise_.n_bar : 0.0;

    for (const Jump& j : jumps_) {
        out += w_down * (2.0 * (j.L * rho * j.Ldag) - j.LdagL * rho - rho * j.LdagL);
        if (w_up != 0.0)
            out += w_up * (2.0 * (j.Ldag * rho * j.L) - j.LLdag * rho - rho * j.LLdag);
    }
    return out;
}

DensityMatrix lindblad_rhs(const DensityMatrix& rho, const QuantumOperator& H,
                           const NoiseModel& noise) {
    if (rho.n_sites() != H.n_sites())
        throw ParameterError("state and Hamiltonian act on different registers");
    LindbladOperator op(H, noise);
    return {rho.n_sites(), op.apply(rho.entries())};
}

DenseCMat rk4_step_dense(const LindbladOperator& op, const DenseCMat& y, double dt) {
    const DenseCMat k1 = op.apply(y);
    const DenseCMat k2 = op.apply(y + (0.5 * dt) * k1);
    const DenseCMat k3 = op.apply(y + (0.5 * dt) * k2);
    const DenseCMat k4 = op.apply(y + dt * k3);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

// Dormand-Prince 5(4) embedded pair.
struct Dopri {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
};

}  // namespace

/// Single accepted rk45 step; adapts dt internally, never stepping past
/// t_end. Returns the new state and updates t and dt.
DenseCMat rk45_step_dense(const LindbladOperator& op, const DenseCMat& y, double& t, double& dt,
                          double t_end, const IntegratorConfig& cfg) {
    using D = Dopri;
    double h = std::min({dt, cfg.max_dt, t_end - t});
    for (;;) {
        const DenseCMat k1 = op.apply(y);
        const DenseCMat k2 = op.apply(y + h * (D::a21 * k1));
        const DenseCMat k3 = op.apply(y + h * (D::a31 * k1 + D::a32 * k2));
        const DenseCMat k4 = op.apply(y + h * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3));
        const DenseCMat k5 =
            op.apply(y + h * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 + D::a54 * k4));
        const DenseCMat k6 = op.apply(
            y + h * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 + D::a64 * k4 + D::a65 * k5));
        DenseCMat y5 = y + h * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 + D::b5 * k5 + D::b6 * k6);
        const DenseCMat k7 = op.apply(y5);
        const double err = (h * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 + D::e6 * k6 +
                                 D::e7 * k7))
                               .cwiseAbs()
                               .maxCoeff();

        if (err <= cfg.tolerance) {
            t += h;
            const double grow = err > 0.0 ? 0.9 * std::pow(cfg.tolerance / err, 0.2) : 5.0;
            dt = std::min(cfg.max_dt, h * std::clamp(grow, 0.2, 5.0));
            return y5;
        }
        const double shrink = std::clamp(0.9 * std::pow(cfg.tolerance / err, 0.2), 0.1, 0.9);
        h *= shrink;
        if (h < cfg.min_dt)
            throw IntegrationError("rk45 step size underflow (tolerance unreachable)", t, h, err);
    }
}

DensityMatrix step(const DensityMatrix& rho, const QuantumOperator& H, const NoiseModel& noise,
                   const IntegratorConfig& config, double dt) {
    config.validate();
    if (dt > config.max_dt) throw ParameterError("step dt exceeds max_dt");
    if (dt <= 0.0) throw ParameterError("step dt must be positive");
    LindbladOperator op(H, noise);
    DenseCMat next = rk4_step_dense(op, rho.entries(), dt);
    return hermitize(DensityMatrix{rho.n_sites(), std::move(next)});
}

DensityMatrix evolve(DensityMatrix rho, const QuantumOperator& H, const NoiseModel& noise,
                     const IntegratorConfig& config, double t_span, double sample_dt,
                     const Observer& observer) {
    config.validate();
    if (t_span < 0.0) throw ParameterError("t_span must be nonnegative");
    if (!(sample_dt > 0.0)) throw ParameterError("sample_dt must be positive");
    LindbladOperator op(H, noise);

    auto emit = [&](double t) {
        if (observer) observer(t, rho);
    };

    const double time_eps = 1e-9;
    emit(0.0);
    double t = 0.0;
    double adaptive_dt = config.dt;
    long sample_idx = 1;
    double next_sample = sample_dt;

    while (t < t_span - time_eps) {
        const double target = std::min(next_sample, t_span);
        while (t < target - time_eps) {
            if (config.method == IntegratorConfig::Method::rk4_fixed) {
                const double h = std::min(config.dt, target - t);
                rho = DensityMatrix{rho.n_sites(), rk4_step_dense(op, rho.entries(), h)};
                t += h;
            } else {
                rho = DensityMatrix{rho.n_sites(), rk45_step_dense(op, rho.entries(), t, adaptive_dt,
                                                                   target, config)};
            }
            rho = hermitize(rho);
        }
        t = target;
        if (target == next_sample && next_sample <= t_span + time_eps) {
            emit(next_sample);
            ++sample_idx;
            next_sample = double(sample_idx) * sample_dt;
        }
    }
    return rho;
}

}  // namespace spinchain
