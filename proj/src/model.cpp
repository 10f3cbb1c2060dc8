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

#include "spinchain/model.hpp"

#include <cmath>

namespace spinchain {

std::string to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::none: return "none";
        case NoiseKind::dissipation: return "dissipation";
        case NoiseKind::dephasing: return "dephasing";
    }
    return "none";
}

NoiseKind noise_kind_from_string(const std::string& s) {
    if (s == "none") return NoiseKind::none;
    if (s == "dissipation") return NoiseKind::dissipation;
    if (s == "dephasing") return NoiseKind::dephasing;
    throw ParameterError("unknown noise kind '" + s + "' (none|dissipation|dephasing)");
}

std::string to_string(DephasingRange r) {
    return r == DephasingRange::all_channel ? "all_channel" : "paper_literal";
}

DephasingRange dephasing_range_from_string(const std::string& s) {
    if (s == "all_channel") return DephasingRange::all_channel;
    if (s == "paper_literal") return DephasingRange::paper_literal;
    throw ParameterError("unknown dephasing range '" + s + "' (all_channel|paper_literal)");
}

void ChainSpec::validate() const {
    if (n_sites < 4 || n_sites > kMaxSites)
        throw ParameterError("n_sites must be in 4.." + std::to_string(kMaxSites));
    if (!(J > 0.0)) throw ParameterError("J must be positive");
    if (J_prime < 0.0) throw ParameterError("J_prime must be nonnegative");
    if (J_prime > J) throw ParameterError("J_prime must not exceed J (weak-coupling regime)");
    if (gamma < 0.0) throw ParameterError("gamma must be nonnegative");
    if (n_bar < 0.0) throw ParameterError("n_bar must be nonnegative");
}

std::vector<int> ChainSpec::channel_sites() const {
    std::vector<int> sites;
    for (int s = 2; s <= n_sites - 1; ++s) sites.push_back(s);
    return sites;
}

std::vector<int> ChainSpec::jump_sites() const {
    if (noise_kind == NoiseKind::none || gamma == 0.0) return {};
    const int last = (noise_kind == NoiseKind::dephasing &&
                      dephasing_sites == DephasingRange::paper_literal)
                         ? n_sites - 2
                         : n_sites - 1;
    std::vector<int> sites;
    for (int s = 2; s <= last; ++s) sites.push_back(s);
    return sites;
}

namespace {

/// sigma_a^+ sigma_b^- + sigma_a^- sigma_b^+ scaled by J, as triplets.
void add_hopping_bond(std::vector<Eigen::Triplet<Complex>>& trip, int n_sites, int a, int b,
                      double J) {
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    const Eigen::Index bit_a = Eigen::Index(1) << site_bit(n_sites, a);
    const Eigen::Index bit_b = Eigen::Index(1) << site_bit(n_sites, b);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const bool ba = col & bit_a;
        const bool bb = col & bit_b;
        if (ba == bb) continue;
        trip.emplace_back(col ^ (bit_a | bit_b), col, Complex(J, 0.0));
    }
}

QuantumOperator from_bonds(const ChainSpec& spec,
                           const std::vector<std::pair<std::pair<int, int>, double>>& bonds) {
    const Eigen::Index dim = Eigen::Index(1) << spec.n_sites;
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(std::size_t(bonds.size()) * std::size_t(dim) / 2);
    for (const auto& [sites, J] : bonds) add_hopping_bond(trip, spec.n_sites, sites.first, sites.second, J);
    SparseCMat m(dim, dim);
    m.setFromTriplets(trip.begin(), trip.end());
    return {spec.n_sites, std::move(m)};
}

}  // namespace

QuantumOperator build_channel_hamiltonian(const ChainSpec& spec) {
    spec.validate();
    std::vector<std::pair<std::pair<int, int>, double>> bonds;
    for (int k = 2; k <= spec.n_sites - 2; ++k) bonds.push_back({{k, k + 1}, spec.J});
    return from_bonds(spec, bonds);
}

QuantumOperator build_interaction_hamiltonian(const ChainSpec& spec) {
    spec.validate();
    const int n = spec.n_sites;
    return from_bonds(spec, {{{1, 2}, spec.J_prime}, {{n - 1, n}, spec.J_prime}});
}

QuantumOperator total_hamiltonian(const ChainSpec& spec) {
    return build_channel_hamiltonian(spec) + build_interaction_hamiltonian(spec);
}

Eigen::VectorXcd initial_state_vector(const ChainSpec& spec) {
    spec.validate();
    const int n = spec.n_sites;
    const Eigen::Index dim = Eigen::Index(1) << n;
    const Eigen::Index end_n = 1;                             // site N excited
    const Eigen::Index end_1 = Eigen::Index(1) << (n - 1);    // site 1 excited
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi(0) = 0.5;
    psi(end_n) = 0.5;
    psi(end_1) = 0.5;
    psi(end_1 | end_n) = 0.5;
    return psi;
}

DensityMatrix initial_state(const ChainSpec& spec) {
    return DensityMatrix::from_pure(spec.n_sites, initial_state_vector(spec));
}

double effective_coupling(const ChainSpec& spec) {
    spec.validate();
    if (spec.n_sites % 2 != 0)
        throw ParameterError(
            "effective_coupling is defined for even n_sites only; the sign factor "
            "(-1)^(N/2) has no odd-N analogue");
    const double sign = (spec.n_sites / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * spec.J_prime * spec.J_prime / spec.J;
}

double effective_model_concurrence(double t, double J_e) {
    return std::abs(std::sin(J_e * t));
}

XXCouplings hubbard_to_xx(double J_up, double J_down, double U_up, double U_down,
                          double U_updown) {
    if (U_up <= 0.0 || U_down <= 0.0 || U_updown <= 0.0)
        throw ParameterError("interaction strengths U must be positive");
    XXCouplings c;
    c.J_z = (J_up * J_up + J_down * J_down) / (2.0 * U_updown) - J_up * J_up / U_up -
            J_down * J_down / U_down;
    c.J_perp = (J_up + J_down) / U_updown;
    return c;
}

}  // namespace spinchain
