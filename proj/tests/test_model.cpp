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

#include <set>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "spinchain/entanglement.hpp"
#include "spinchain/model.hpp"

using namespace spinchain;

namespace {

ChainSpec spec4() {
    ChainSpec s;
    s.n_sites = 4;
    s.J = 1.0;
    s.J_prime = 0.05;
    return s;
}

QuantumOperator total_number(int n) {
    QuantumOperator num = QuantumOperator::zero(n);
    for (int s = 1; s <= n; ++s) num += embed_site_operator(pauli::number(), s, n);
    return num;
}

}  // namespace

TEST_CASE("channel Hamiltonian has the single inner bond at N=4") {
    const QuantumOperator h = build_channel_hamiltonian(spec4());
    const DenseCMat m = h.to_dense();
    // |0100> = 4 and |0010> = 2
    CHECK(m(2, 4).real() == doctest::Approx(1.0));
    CHECK(m(4, 2).real() == doctest::Approx(1.0));
    // hopping on the (2,3) bond only: the end-site bits are spectators
    int nonzeros = 0;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            if (std::abs(m(i, j)) > 0) {
                ++nonzeros;
                CHECK((i ^ j) == 6);  // flips exactly bits 1 and 2
            }
    CHECK(nonzeros == 8);
    CHECK(h.hermiticity_error() == 0.0);
}

TEST_CASE("channel Hamiltonian single-excitation block has eigenvalues +-1") {
    const DenseCMat m = build_channel_hamiltonian(spec4()).to_dense();
    Eigen::Matrix2cd block;
    block << m(2, 2), m(2, 4), m(4, 2), m(4, 4);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
    CHECK(es.eigenvalues()(1) == doctest::Approx(1.0));
}

TEST_CASE("interaction Hamiltonian couples the ends to the channel") {
    const QuantumOperator h = build_interaction_hamiltonian(spec4());
    const DenseCMat m = h.to_dense();
    CHECK(m(4, 8).real() == doctest::Approx(0.05));  // |1000> -> |0100>
    CHECK(h.hermiticity_error() == 0.0);

    ChainSpec off = spec4();
    off.J_prime = 0.0;
    CHECK(build_interaction_hamiltonian(off).to_dense().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("total Hamiltonian bonds carry the right couplings at N=4") {
    const DenseCMat m = total_hamiltonian(spec4()).to_dense();
    // expected couplings by flipped-bit mask: (1,2)->0b1100, (2,3)->0b0110, (3,4)->0b0011
    std::set<int> seen;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            if (std::abs(m(i, j)) == 0.0) continue;
            const int mask = i ^ j;
            seen.insert(mask);
            const double expect = mask == 6 ? 1.0 : 0.05;
            CHECK(m(i, j).real() == doctest::Approx(expect));
            CHECK((mask == 12 || mask == 6 || mask == 3));
        }
    CHECK(seen == std::set<int>{3, 6, 12});
}

TEST_CASE("Hamiltonians conserve the total excitation number") {
    for (int n : {4, 5, 6}) {
        ChainSpec s;
        s.n_sites = n;
        s.J_prime = 0.07;
        const QuantumOperator h = total_hamiltonian(s);
        const QuantumOperator num = total_number(n);
        const DenseCMat comm = (h * num).to_dense() - (num * h).to_dense();
        CHECK(comm.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("uniform chain appears when J_prime = J") {
    ChainSpec s = spec4();
    s.J_prime = 1.0;
    const DenseCMat m = total_hamiltonian(s).to_dense();
    CHECK(m(2, 4).real() == doctest::Approx(1.0));
    CHECK(m(4, 8).real() == doctest::Approx(1.0));
    CHECK(m(1, 2).real() == doctest::Approx(1.0));
}

TEST_CASE("initial state amplitudes and marginals") {
    const ChainSpec s = spec4();
    const Eigen::VectorXcd psi = initial_state_vector(s);
    for (int idx : {0, 1, 8, 9}) CHECK(std::abs(psi(idx) - Complex(0.5)) < 1e-15);
    CHECK(psi.cwiseAbs2().sum() == doctest::Approx(1.0));

    const DensityMatrix rho = initial_state(s);
    const DensityDiagnostics d = check_density(rho);
    CHECK(d.purity == doctest::Approx(1.0));
    CHECK(d.trace_error < 1e-12);

    const DensityMatrix channel = partial_trace(rho, {2, 3});
    CHECK(std::abs(channel.entries()(0, 0) - Complex(1.0)) < 1e-15);
    CHECK(channel.entries().cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("effective coupling formula and sign") {
    ChainSpec s;
    s.n_sites = 10;
    s.J = 1.0;
    s.J_prime = 0.05;
    CHECK(effective_coupling(s) == doctest::Approx(-0.0025));
    s.n_sites = 4;
    CHECK(effective_coupling(s) == doctest::Approx(0.0025));
    s.J_prime = 0.0;
    CHECK(effective_coupling(s) == 0.0);
    s.n_sites = 5;
    CHECK_THROWS_WITH_AS(effective_coupling(s), doctest::Contains("even"), ParameterError);
}

TEST_CASE("effective model concurrence closed form matches direct evolution") {
    // oracle: exponentiate the 4x4 effective hopping, evolve |+>|+>, and
    // compare the computed concurrence against |sin(J_e t)|
    const double J_e = -0.0025;
    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    h(1, 2) = J_e;
    h(2, 1) = J_e;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    Eigen::Vector4cd psi0;
    psi0 << 0.5, 0.5, 0.5, 0.5;

    for (double t : {0.0, 100.0, 314.159265358979, 628.318530717959, 1000.0}) {
        Eigen::Vector4cd phases;
        for (int i = 0; i < 4; ++i)
            phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * t));
        const Eigen::Vector4cd psi =
            es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * psi0;
        const ConcurrenceResult c = concurrence(DensityMatrix::from_pure(2, psi));
        CHECK(c.value == doctest::Approx(effective_model_concurrence(t, J_e)).epsilon(1e-7));
    }
    CHECK(effective_model_concurrence(0.0, J_e) == 0.0);
    CHECK(effective_model_concurrence(628.318530717959, J_e) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("lattice couplings") {
    // symmetric point: U_up = U_down = U, U_updown = U/2
    const XXCouplings sym = hubbard_to_xx(0.1, 0.1, 2.0, 2.0, 1.0);
    CHECK(sym.J_z == 0.0);
    CHECK(sym.J_perp == doctest::Approx(0.2));

    const XXCouplings zero = hubbard_to_xx(0.0, 0.0, 1.0, 1.0, 1.0);
    CHECK(zero.J_z == 0.0);
    CHECK(zero.J_perp == 0.0);

    const XXCouplings asym = hubbard_to_xx(1.0, 0.0, 1.0, 1.0, 1.0);
    CHECK(asym.J_z == doctest::Approx(-0.5));
    CHECK(asym.J_perp == doctest::Approx(1.0));

    CHECK_THROWS_AS(hubbard_to_xx(1.0, 1.0, 0.0, 1.0, 1.0), ParameterError);
}

TEST_CASE("chain spec validation") {
    ChainSpec s;
    s.n_sites = 3;
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s = ChainSpec{};
    s.J_prime = 2.0;
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s = ChainSpec{};
    s.gamma = -0.1;
    CHECK_THROWS_AS(s.validate(), ParameterError);

    s = ChainSpec{};
    s.n_sites = 6;
    s.noise_kind = NoiseKind::dissipation;
    s.gamma = 0.1;
    CHECK(s.jump_sites() == std::vector<int>{2, 3, 4, 5});
    s.noise_kind = NoiseKind::dephasing;
    CHECK(s.jump_sites() == std::vector<int>{2, 3, 4, 5});
    s.dephasing_sites = DephasingRange::paper_literal;
    CHECK(s.jump_sites() == std::vector<int>{2, 3, 4});
}
