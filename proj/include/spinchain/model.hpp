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
#include <vector>

#include "spinchain/density.hpp"
#include "spinchain/operators.hpp"

namespace spinchain {

enum class NoiseKind { none, dissipation, dephasing };

/// Which channel sites dephase. `all_channel` covers sites 2..N-1;
/// `paper_literal` stops at N-2, leaving site N-1 noiseless.
enum class DephasingRange { all_channel, paper_literal };

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& s);
std::string to_string(DephasingRange r);
DephasingRange dephasing_range_from_string(const std::string& s);

/// Physical parameters of one chain configuration. Sites 1 and N are the
/// sender/receiver qubits; 2..N-1 form the channel.
struct ChainSpec {
    int n_sites = 10;
    double J = 1.0;         ///< channel exchange coupling (sets the energy unit)
    double J_prime = 0.05;  ///< boundary coupling of the end qubits to the channel
    double gamma = 0.0;     ///< decay / dephasing rate
    double n_bar = 0.0;     ///< mean bath quanta (thermal occupation)
    NoiseKind noise_kind = NoiseKind::none;
    DephasingRange dephasing_sites = DephasingRange::all_channel;

    /// Throws ParameterError when outside the supported regime
    /// (4 <= n_sites <= kMaxSites, 0 <= J' <= J, J > 0, gamma >= 0, n_bar >= 0).
    void validate() const;

    std::vector<int> channel_sites() const;  ///< 2..N-1
    /// Sites carrying jump operators under the configured noise kind.
    std::vector<int> jump_sites() const;
};

/// Hopping between neighbouring channel sites only (bonds (2,3)..(N-2,N-1)).
QuantumOperator build_channel_hamiltonian(const ChainSpec& spec);

/// Boundary hopping (1,2) and (N-1,N) at strength J'.
QuantumOperator build_interaction_hamiltonian(const ChainSpec& spec);

QuantumOperator total_hamiltonian(const ChainSpec& spec);

/// |+> (x) |0...0>_channel (x) |+>
Eigen::VectorXcd initial_state_vector(const ChainSpec& spec);
DensityMatrix initial_state(const ChainSpec& spec);

/// Second-order end-to-end coupling (-1)^(N/2) J'^2 / J, defined for even N.
double effective_coupling(const ChainSpec& spec);

/// Concurrence of |+>|+> evolved under the two-qubit effective hopping,
/// |sin(J_e t)|.
double effective_model_concurrence(double t, double J_e);

struct XXCouplings {
    double J_z = 0.0;
    double J_perp = 0.0;
};

/// Superexchange couplings of the two-component lattice model; J_z vanishes
/// at the symmetric point U_up = U_down = 2 U_updown, J_up = J_down.
XXCouplings hubbard_to_xx(double J_up, double J_down, double U_up, double U_down, double U_updown);

}  // namespace spinchain
