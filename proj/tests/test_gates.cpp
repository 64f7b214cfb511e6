// Copyright 2026 The qtel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qtel/gates.hpp"
#include "test_util.hpp"

using namespace qtel;
using qtel::testing::max_abs;

namespace {

// Reference lift: U = exp(i pi/4 (a0^dag a1 + a1^dag a0)) generates the
// symmetric beam splitter; built from ladder operators and a matrix
// exponential by eigendecomposition of the Hermitian generator.
Eigen::MatrixXcd reference_beam_splitter(const FockSpace &space) {
    const auto a0 = qtel::testing::annihilator(space, 0);
    const auto a1 = qtel::testing::annihilator(space, 1);
    const Eigen::MatrixXcd gen = a0.adjoint() * a1 + a1.adjoint() * a0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gen);
    Eigen::VectorXcd ph(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < ph.size(); ++k) ph(k) = std::polar(1.0, kPi / 4 * es.eigenvalues()(k));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace

TEST(BeamSplitter, SinglePhotonAndVacuum) {
    const auto bs = beam_splitter_unitary();
    const auto out = apply_unitary(basis_state({1, 0}, 2, 2), bs);
    EXPECT_LT(std::abs(out.amplitude({1, 0}) - 1.0 / std::sqrt(2.0)), 1e-15);
    EXPECT_LT(std::abs(out.amplitude({0, 1}) - kI / std::sqrt(2.0)), 1e-15);
    const auto vac = apply_unitary(vacuum(2, 2), bs);
    EXPECT_LT(std::abs(vac.amplitude({0, 0}) - 1.0), 1e-15);
}

TEST(BeamSplitter, HongOuMandel) {
    const auto out = apply_unitary(basis_state({1, 1}, 2, 2), beam_splitter_unitary());
    EXPECT_LT(std::abs(out.amplitude({1, 1})), 1e-15);
    EXPECT_LT(std::abs(out.amplitude({2, 0}) - kI / std::sqrt(2.0)), 1e-15);
    EXPECT_LT(std::abs(out.amplitude({0, 2}) - kI / std::sqrt(2.0)), 1e-15);
}

TEST(BeamSplitter, MatchesLadderOperatorExponential) {
    const FockSpace space(2, 2);
    const auto ref = reference_beam_splitter(space);
    const auto ours = qtel::testing::full_matrix(space, beam_splitter_unitary());
    // Compare on the sectors with total photon number <= 2, which the
    // truncation represents exactly.
    for (std::size_t c = 0; c < space.dim(); ++c) {
        const auto occ = space.occupation_of(c);
        if (occ[0] + occ[1] > 2) continue;
        EXPECT_LT((ours.col(static_cast<Eigen::Index>(c)) - ref.col(static_cast<Eigen::Index>(c))).norm(), 1e-12)
            << "column " << c;
    }
}

TEST(CnotFock, TruthTable) {
    const auto cx = cnot_fock_unitary(1);
    EXPECT_EQ(apply_unitary(basis_state({1, 1}, 2, 1), cx).amplitude({1, 0}), cplx(1.0));
    EXPECT_EQ(apply_unitary(basis_state({1, 0}, 2, 1), cx).amplitude({1, 1}), cplx(1.0));
    EXPECT_EQ(apply_unitary(basis_state({0, 1}, 2, 1), cx).amplitude({0, 1}), cplx(1.0));
    EXPECT_EQ(apply_unitary(basis_state({0, 0}, 2, 1), cx).amplitude({0, 0}), cplx(1.0));
}

TEST(CnotFock, InvolutionOnRandomStates) {
    std::mt19937_64 rng(17);
    const auto cx = cnot_fock_unitary().on({2, 0});
    for (int t = 0; t < 50; ++t) {
        const auto psi = qtel::testing::random_qubit_state(3, 2, rng);
        const auto back = apply_unitary(apply_unitary(psi, cx), cx);
        EXPECT_LT(max_abs(back.amplitudes() - psi.amplitudes()), 1e-14);
    }
}

TEST(CnotFock, RejectsTwoPhotonTarget) {
    EXPECT_THROW(apply_unitary(basis_state({1, 2}, 2, 2), cnot_fock_unitary()), LeakageError);
}

TEST(CzAndZ, TruthTable) {
    const auto cz = cz_unitary(1);
    EXPECT_EQ(apply_unitary(basis_state({1, 1}, 2, 1), cz).amplitude({1, 1}), cplx(-1.0));
    EXPECT_EQ(apply_unitary(basis_state({0, 1}, 2, 1), cz).amplitude({0, 1}), cplx(1.0));
    EXPECT_EQ(apply_unitary(basis_state({1, 0}, 2, 1), cz).amplitude({1, 0}), cplx(1.0));
    EXPECT_EQ(apply_unitary(basis_state({1}, 1, 1), z_unitary(1)).amplitude({1}), cplx(-1.0));
    EXPECT_THROW(apply_unitary(basis_state({2, 1}, 2, 2), cz_unitary()), LeakageError);
}

TEST(CzAndZ, ZTogglesBellStates) {
    StateVector plus = StateVector::zero(FockSpace(2, 1));
    plus.set_amplitude({0, 0}, 1.0 / std::sqrt(2.0));
    plus.set_amplitude({1, 1}, 1.0 / std::sqrt(2.0));
    const auto out = apply_unitary(plus, z_unitary(1).on({1}));
    EXPECT_LT(std::abs(out.amplitude({0, 0}) - 1.0 / std::sqrt(2.0)), 1e-15);
    EXPECT_LT(std::abs(out.amplitude({1, 1}) + 1.0 / std::sqrt(2.0)), 1e-15);
}

TEST(CzAndZ, CzFromHadamardConjugatedCnot) {
    const FockSpace space(2, 2);
    const auto h = qtel::testing::full_matrix(space, hadamard_unitary().on({1}));
    const auto cx = qtel::testing::full_matrix(space, cnot_fock_unitary());
    const auto cz = qtel::testing::full_matrix(space, cz_unitary());
    const Eigen::MatrixXcd lhs = h * cx * h;
    for (std::size_t r = 0; r < space.dim(); ++r)
        for (std::size_t c = 0; c < space.dim(); ++c) {
            const auto ro = space.occupation_of(r), co = space.occupation_of(c);
            if (ro[0] > 1 || ro[1] > 1 || co[0] > 1 || co[1] > 1) continue;
            EXPECT_LT(std::abs(lhs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) -
                               cz(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))),
                      1e-12);
        }
}

TEST(PhotonNumber, EveryNumberPreservingGateCommutesWithN) {
    const FockSpace space(2, 2);
    const auto n = qtel::testing::number_operator(space);
    const std::vector<ModeUnitary> gates = {beam_splitter_unitary(), phase_shift_unitary(0.77), cz_unitary(),
                                            z_unitary(), passive_unitary((Eigen::Matrix2cd() << 0.6, 0.8, -0.8, 0.6)
                                                                             .finished())};
    for (const auto &g : gates) {
        const auto u = qtel::testing::full_matrix(space, g);
        EXPECT_LT(max_abs(u * n - n * u), 1e-12);
    }
}

TEST(PhotonNumber, NotChangesParity) {
    const auto out = apply_unitary(basis_state({0}, 1, 1), not_fock_unitary(1));
    EXPECT_EQ(out.amplitude({1}), cplx(1.0));
}

TEST(Projectors, XEigenstate) {
    const auto p = basis_projectors(MeasBasis::x());
    Eigen::VectorXcd plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    EXPECT_NEAR((plus.adjoint() * p[0] * plus)(0).real(), 1.0, 1e-15);
    EXPECT_NEAR((plus.adjoint() * p[1] * plus)(0).real(), 0.0, 1e-15);
}

TEST(Projectors, RotatedOnOneIsHalf) {
    for (double d : {0.0, 0.4, 2.0}) {
        const auto p = basis_projectors(MeasBasis::rotated(d));
        EXPECT_NEAR(p[0](1, 1).real(), 0.5, 1e-15);
    }
}

TEST(Projectors, RotatedZeroIsXAndRotatedPiIsXSwapped) {
    const auto x = basis_projectors(MeasBasis::x());
    const auto r0 = basis_projectors(MeasBasis::rotated(0.0));
    const auto rpi = basis_projectors(MeasBasis::rotated(kPi));
    EXPECT_LT(max_abs(x[0] - r0[0]), 1e-12);
    EXPECT_LT(max_abs(x[1] - r0[1]), 1e-12);
    EXPECT_LT(max_abs(x[0] - rpi[1]), 1e-12);
    EXPECT_LT(max_abs(x[1] - rpi[0]), 1e-12);
}

TEST(Projectors, CompletenessAndOrthogonality) {
    for (const auto &b : {MeasBasis::number(), MeasBasis::x(), MeasBasis::rotated(1.1), MeasBasis::parity()}) {
        const auto ps = basis_projectors(b, 1);
        const auto d = ps[0].rows();
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            sum += ps[i];
            EXPECT_LT(max_abs(ps[i] - ps[i].adjoint()), 1e-12);
            EXPECT_LT(max_abs(ps[i] * ps[i] - ps[i]), 1e-12);
            for (std::size_t j = i + 1; j < ps.size(); ++j) EXPECT_LT(max_abs(ps[i] * ps[j]), 1e-12);
        }
        EXPECT_LT(max_abs(sum - Eigen::MatrixXcd::Identity(d, d)), 1e-12);
    }
}

TEST(Projectors, ParityOnPair) {
    const auto ps = basis_projectors(MeasBasis::parity(), 1);
    const FockSpace local(2, 1);
    EXPECT_EQ(ps[0](static_cast<Eigen::Index>(local.index_of({1, 1})), static_cast<Eigen::Index>(local.index_of({1, 1}))),
              cplx(1.0));
    EXPECT_EQ(ps[1](static_cast<Eigen::Index>(local.index_of({0, 1})), static_cast<Eigen::Index>(local.index_of({0, 1}))),
              cplx(1.0));
}

TEST(GateSpec, ArityIsChecked) {
    EXPECT_THROW(make_unitary({GateSpec::Kind::BeamSplitter, {0}}), InvalidArgument);
    EXPECT_THROW(make_unitary({GateSpec::Kind::Z, {0, 1}}), InvalidArgument);
    const auto u = make_unitary({GateSpec::Kind::PhaseShift, {3}, 0.5});
    EXPECT_EQ(u.targets, std::vector<int>{3});
}
