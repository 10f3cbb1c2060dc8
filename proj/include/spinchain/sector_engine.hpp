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

#include <cstdint>
#include <vector>

#include "spinchain/density.hpp"
#include "spinchain/dynamics.hpp"
#include "spinchain/measurement_schedule.hpp"
#include "spinchain/model.hpp"

namespace spinchain {

// The XX Hamiltonian conserves the total excitation number, the jump
// operators move it by exactly one on both sides of rho at once, and the
// channel projector is diagonal in the occupation basis. The generator
// therefore never mixes density-matrix blocks <m| rho |n> with different
// offsets d = n - m, and the initial state |+>|0_ch>|+> populates only
// d in {-2..2}. This engine propagates the d = 0, 1, 2 block chains (the
// negative offsets follow from Hermiticity), which is exact and much
// smaller than the full 4^N problem. When the generator also conserves the
// total excitation number itself (no noise, dephasing, or zero-temperature
// decay), only sectors 0..2 can ever be populated and the state shrinks to
// a few hundred amplitudes.

/// Computational-basis states grouped by excitation number.
class SectorBasis {
public:
    SectorBasis(int n_sites, int max_exc);

    int n_sites = 0;
    int max_exc = 0;
    std::vector<std::vector<std::uint32_t>> states;  ///< per sector, sorted
    std::vector<std::int32_t> rank;                  ///< index of a state within its sector

    int sector_size(int m) const { return int(states[m].size()); }
};

/// Exact block-chain propagator for the spec's initial state and noise
/// models. Offers the same stepping / measurement / sampling operations as
/// the dense backend.
class SectorEngine {
public:
    SectorEngine(const ChainSpec& spec, const NoiseModel& noise, const IntegratorConfig& config);

    /// Number of excitations that can ever appear given the noise model
    /// (2 when the generator conserves excitation number, N otherwise).
    static int required_max_exc(const ChainSpec& spec, const NoiseModel& noise);

    void set_initial_state();

    void rk4_step(double h);
    /// One accepted adaptive step, never past t_end; updates t and dt.
    void rk45_step(double& t, double& dt, double t_end);

    /// Applies the channel measurement; returns prob_empty.
    double measure(MeasurementMode mode);

    Eigen::Matrix4cd end_pair_state() const;  ///< reduced state of sites {1, N}
    double trace() const;
    double purity() const;
    double hermiticity_error() const;
    double min_eigenvalue() const;  ///< full-state eigenvalue check (expensive)
    DensityMatrix to_density_matrix() const;

    const SectorBasis& basis() const { return basis_; }

private:
    struct Csr {
        std::vector<std::int32_t> rowptr, col;
        std::vector<double> val;
    };
    struct JumpBit {
        int bit = 0;
        // partner index tables per sector: index in sector m+1 of s | bit
        // (bit clear), index in sector m-1 of s & ~bit (bit set); -1 otherwise
        std::vector<std::vector<std::int32_t>> up, down;
    };
    // Column program for the thermal sandwiches: per sector and output
    // column j, the jump sites whose bit condition holds at j together with
    // the partner column, packed so one sweep accumulates every site.
    struct SandwichStep {
        std::int32_t partner = 0;
        std::int32_t site = 0;
    };
    struct SandwichProgram {
        std::vector<std::int32_t> colptr;  ///< size C+1
        std::vector<SandwichStep> steps;
    };

    // Evaluates k = L(y). When fuse_* pointers are set the stage algebra of
    // the integrator is folded into the same sweep: acc += ca * k and
    // tmp = y0 + ct * k, saving full-state memory passes.
    void rhs(const double* y, double* out, double* fuse_acc = nullptr, double ca = 0.0,
             const double* fuse_y0 = nullptr, double* fuse_tmp = nullptr, double ct = 0.0) const;
    void hermitize_d0(std::vector<double>& s) const;
    void axpy(double a, const std::vector<double>& x, std::vector<double>& y) const;

    double* block(std::vector<double>& s, int d, int m) const;
    const double* block(const std::vector<double>& s, int d, int m) const;

    ChainSpec spec_;
    NoiseModel noise_;
    IntegratorConfig config_;
    SectorBasis basis_;

    std::vector<Csr> ham_;  ///< per-sector restriction of H
    std::vector<JumpBit> jump_bits_;
    std::vector<SandwichProgram> down_prog_, up_prog_;  ///< per sector
    std::vector<std::vector<double>> diag_a_;     ///< dissipation diagonal, per sector
    std::vector<std::vector<std::uint8_t>> empty_mask_;  ///< channel-empty flag per state
    std::vector<std::uint32_t> channel_configs_;  ///< channel patterns reachable at max_exc
    std::uint32_t channel_mask_ = 0;
    std::uint32_t dephasing_mask_ = 0;
    double w_down_ = 0.0, w_up_ = 0.0;
    bool dissipative_diag_ = false, dephasing_diag_ = false;

    int n_chains_ = 3;                               ///< offsets d = 0,1,2
    std::vector<std::vector<std::size_t>> offset_;   ///< [d][m] -> flat offset (re plane)
    std::size_t flat_size_ = 0;

    std::vector<double> y_;
    mutable std::vector<double> tmp_, tmp2_, acc_;
    mutable std::vector<double> scratch_zeros_, row_re_, row_im_;
    std::vector<std::vector<double>> rk45_stages_;
};

}  // namespace spinchain
