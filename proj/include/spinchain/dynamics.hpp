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

#include <functional>
#include <vector>

#include "spinchain/density.hpp"
#include "spinchain/model.hpp"
#include "spinchain/operators.hpp"

namespace spinchain {

/// Environment coupling of the channel sites. With kind=dissipation the
/// jump operator is sigma_minus and n_bar weights the thermal up/down
/// dissipator pair; with kind=dephasing the jump operator is sigma_z and
/// n_bar is ignored.
struct NoiseModel {
    NoiseKind kind = NoiseKind::none;
    double gamma = 0.0;
    double n_bar = 0.0;
    std::vector<int> jump_sites;

    static NoiseModel from_spec(const ChainSpec& spec);
    void validate(int n_sites) const;
    bool active() const { return kind != NoiseKind::none && gamma > 0.0 && !jump_sites.empty(); }
};

struct IntegratorConfig {
    enum class Method { rk4_fixed, rk45_adaptive };
    Method method = Method::rk4_fixed;
    double dt = 0.02;        ///< fixed step (rk4) / initial step (rk45)
    double tolerance = 1e-8; ///< per-step max-norm error bound (rk45)
    double max_dt = 0.1;
    double min_dt = 1e-9;    ///< rk45 gives up below this

    void validate() const;
};

std::string to_string(IntegratorConfig::Method m);
IntegratorConfig::Method integrator_method_from_string(const std::string& s);

/// Precomputed Hamiltonian + jump-operator products for repeated
/// right-hand-side evaluations.
class LindbladOperator {
public:
    LindbladOperator(QuantumOperator H, NoiseModel noise);

    /// -i[H,rho] + (n_bar+1) sum_k (gamma/2)(2 L rho L+ - L+L rho - rho L+L)
    ///           +  n_bar    sum_k (gamma/2)(2 L+ rho L - L L+ rho - rho L L+)
    /// with L = sigma_minus (dissipation); dephasing keeps only the first
    /// dissipator with L = sigma_z and no thermal weights.
    DenseCMat apply(const DenseCMat& rho) const;

    const QuantumOperator& hamiltonian() const { return ham_; }
    const NoiseModel& noise() const { return noise_; }
    Eigen::Index dim() const { return ham_.dim(); }

private:
    QuantumOperator ham_;
    NoiseModel noise_;
    struct Jump {
        SparseCMat L, Ldag, LdagL, LLdag;
    };
    std::vector<Jump> jumps_;
};

/// One-shot reference evaluation of the master-equation right-hand side.
DensityMatrix lindblad_rhs(const DensityMatrix& rho, const QuantumOperator& H,
                           const NoiseModel& noise);

/// Stepper building blocks shared by the evolution backends.
DenseCMat rk4_step_dense(const LindbladOperator& op, const DenseCMat& y, double dt);
DenseCMat rk45_step_dense(const LindbladOperator& op, const DenseCMat& y, double& t, double& dt,
                          double t_end, const IntegratorConfig& config);

/// One integrator step followed by re-hermitization.
DensityMatrix step(const DensityMatrix& rho, const QuantumOperator& H, const NoiseModel& noise,
                   const IntegratorConfig& config, double dt);

using Observer = std::function<void(double t, const DensityMatrix& rho)>;

/// Integrates rho over [0, t_span], invoking the observer at every multiple
/// of sample_dt (including t=0). Returns the final state. Deterministic for
/// a given configuration.
DensityMatrix evolve(DensityMatrix rho, const QuantumOperator& H, const NoiseModel& noise,
                     const IntegratorConfig& config, double t_span, double sample_dt,
                     const Observer& observer = {});

}  // namespace spinchain
