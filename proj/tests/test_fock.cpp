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

#include "qtel/fock.hpp"
#include "qtel/gates.hpp"
#include "test_util.hpp"

using namespace qtel;
using qtel::testing::max_abs;

TEST(FockSpace, EnumerationIsRowMajorWithLastModeFastest) {
    const FockSpace s(3, 1);
    EXPECT_EQ(s.dim(), 8u);
    EXPECT_EQ(s.index_of({0, 0, 1}), 1u);
    EXPECT_EQ(s.index_of({1, 0, 0}), 4u);
    EXPECT_EQ(s.occupation_of(6), (OccupationState{1, 1, 0}));
    const FockSpace t(2, 2);
    EXPECT_EQ(t.index_of({1, 2}), 5u);
}

TEST(BasisState, Vacuum) {
    const auto v = basis_state({0, 0}, 2, 1);
    EXPECT_EQ(v.amplitudes()(0), cplx(1.0));
    EXPECT_DOUBLE_EQ(v.norm(), 1.0);
}

TEST(BasisState, ThreeModeLabel) {
    const auto v = basis_state({1, 0, 1}, 3, 1);
    EXPECT_EQ(v.amplitude({1, 0, 1}), cplx(1.0));
    EXPECT_DOUBLE_EQ(v.amplitudes().squaredNorm(), 1.0);
}

TEST(BasisState, RejectsCutoffViolationAndWrongLength) {
    EXPECT_THROW(basis_state({2, 0}, 2, 1), InvalidArgument);
    EXPECT_THROW(basis_state({1, 0, 0}, 2, 1), InvalidArgument);
}

TEST(ApplyUnitary, IdentityReturnsInputExactly) {
    std::mt19937_64 rng(5);
    const auto psi = qtel::testing::random_state(3, 2, rng);
    ModeUnitary id{{1}, 2, Eigen::MatrixXcd::Identity(3, 3), std::vector<bool>(3, true)};
    const auto out = apply_unitary(psi, id);
    EXPECT_EQ(max_abs(out.amplitudes() - psi.amplitudes()), 0.0);
}

TEST(ApplyUnitary, BeamSplitterOnSinglePhoton) {
    const auto out = apply_unitary(basis_state({1, 0}, 2, 2), beam_splitter_unitary().on({0, 1}));
    EXPECT_NEAR(std::abs(out.amplitude({1, 0}) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.amplitude({0, 1}) - kI / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(ApplyUnitary, DisjointPhasesCommute) {
    std::mt19937_64 rng(9);
    const auto psi = qtel::testing::random_state(3, 2, rng);
    const auto a = phase_shift_unitary(0.4).on({0});
    const auto b = phase_shift_unitary(-1.3).on({2});
    const auto ab = apply_unitary(apply_unitary(psi, a), b);
    const auto ba = apply_unitary(apply_unitary(psi, b), a);
    EXPECT_LT(max_abs(ab.amplitudes() - ba.amplitudes()), 1e-15);
    // Oracle: diagonal phase e^{i(0.4 n0 - 1.3 n2)} per basis label.
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const auto occ = psi.space().occupation_of(i);
        const cplx expect = psi.amplitudes()(static_cast<Eigen::Index>(i)) * std::polar(1.0, 0.4 * occ[0] - 1.3 * occ[2]);
        EXPECT_LT(std::abs(ab.amplitudes()(static_cast<Eigen::Index>(i)) - expect), 1e-14);
    }
}

TEST(ApplyUnitary, LeakageIsReported) {
    // CNOT is only defined on occupancies <= 1.
    EXPECT_THROW(apply_unitary(basis_state({2, 0}, 2, 2), cnot_fock_unitary().on({0, 1})), LeakageError);
}

TEST(NumberMeasurement, BalancedSuperposition) {
    const auto psi = apply_unitary(basis_state({1, 0}, 2, 1), beam_splitter_unitary(1).on({0, 1}));
    const auto d = number_measurement_distribution(psi, {0, 1});
    ASSERT_EQ(d.size(), 2u);
    EXPECT_NEAR(d.at({1, 0}), 0.5, 1e-15);
    EXPECT_NEAR(d.at({0, 1}), 0.5, 1e-15);
}

TEST(NumberMeasurement, DensityOperatorAgreesWithPureState) {
    std::mt19937_64 rng(21);
    const auto psi = qtel::testing::random_state(3, 1, rng);
    const auto rho = DensityOperator::from_pure(psi);
    const auto a = number_measurement_distribution(psi, {2, 0});
    const auto b = number_measurement_distribution(rho, {2, 0});
    ASSERT_EQ(a.size(), b.size());
    for (const auto &[k, p] : a) EXPECT_NEAR(p, b.at(k), 1e-14);
    EXPECT_NEAR(total_probability(a), 1.0, 1e-12);
}

TEST(NumberMeasurement, EmptyModeSetIsAnError) {
    EXPECT_THROW(number_measurement_distribution(vacuum(2, 1), {}), InvalidArgument);
}

TEST(SampleAndCollapse, EigenstateIsUnchanged) {
    const auto psi = basis_state({1, 0, 1}, 3, 1);
    const auto c = sample_and_collapse(psi, {0, 2}, std::uint64_t{77});
    EXPECT_EQ(c.outcome, (OccupationState{1, 1}));
    EXPECT_LT(max_abs(c.state.amplitudes() - psi.amplitudes()), 1e-15);
}

TEST(SampleAndCollapse, DeterministicPerSeed) {
    std::mt19937_64 rng(3);
    const auto psi = qtel::testing::random_state(2, 2, rng);
    const auto a = sample_and_collapse(psi, {0, 1}, std::uint64_t{1234});
    const auto b = sample_and_collapse(psi, {0, 1}, std::uint64_t{1234});
    EXPECT_EQ(a.outcome, b.outcome);
    EXPECT_EQ(max_abs(a.state.amplitudes() - b.state.amplitudes()), 0.0);
}

TEST(SampleAndCollapse, FrequenciesWithinThreeSigma) {
    const auto psi = apply_unitary(basis_state({1, 0}, 2, 1), beam_splitter_unitary(1).on({0, 1}));
    std::mt19937_64 rng(42);
    const int n = 100000;
    int hits = 0;
    for (int i = 0; i < n; ++i)
        if (sample_and_collapse(psi, {0}, rng).outcome[0] == 1) ++hits;
    const double sigma = std::sqrt(0.25 / n);
    EXPECT_LT(std::abs(hits / static_cast<double>(n) - 0.5), 3 * sigma);
}

TEST(SampleAndCollapse, ZeroProbabilityProjectionIsAnError) {
    EXPECT_THROW(collapse_to(basis_state({1, 0}, 2, 1), {0}, {0}), NumericalError);
}

TEST(PartialTrace, ProductState) {
    std::mt19937_64 rng(8);
    const auto a = DensityOperator::from_pure(qtel::testing::random_state(1, 2, rng));
    const auto b = DensityOperator::from_pure(qtel::testing::random_state(2, 2, rng));
    const auto r = partial_trace(tensor(a, b), {0});
    EXPECT_LT(max_abs(r.matrix() - a.matrix()), 1e-14);
    const auto rb = partial_trace(tensor(a, b), {1, 2});
    EXPECT_LT(max_abs(rb.matrix() - b.matrix()), 1e-14);
}

TEST(PartialTrace, BellPairIsMaximallyMixed) {
    StateVector phi = StateVector::zero(FockSpace(2, 1));
    phi.set_amplitude({0, 0}, 1.0 / std::sqrt(2.0));
    phi.set_amplitude({1, 1}, 1.0 / std::sqrt(2.0));
    const auto r = partial_trace(DensityOperator::from_pure(phi), {1});
    EXPECT_LT(max_abs(r.matrix() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)), 1e-15);
}

TEST(PartialTrace, ComposesOverDisjointSubsets) {
    std::mt19937_64 rng(13);
    const auto rho = DensityOperator::from_pure(qtel::testing::random_state(4, 1, rng));
    // Trace mode 1, then (in the reduced register) original mode 3.
    const auto step = partial_trace(partial_trace(rho, {0, 2, 3}), {0, 1});
    const auto once = partial_trace(rho, {0, 2});
    EXPECT_LT(max_abs(step.matrix() - once.matrix()), 1e-14);
    EXPECT_NEAR(once.trace(), 1.0, 1e-12);
    EXPECT_LT(once.hermiticity_defect(), 1e-12);
}

TEST(PartialTrace, InvalidModesAreRejected) {
    const auto rho = DensityOperator::from_pure(vacuum(2, 1));
    EXPECT_THROW(partial_trace(rho, {3}), InvalidArgument);
    EXPECT_THROW(partial_trace(rho, {}), InvalidArgument);
}

TEST(Serialization, RoundTripIsBitExact) {
    std::mt19937_64 rng(99);
    const auto psi = qtel::testing::random_state(3, 2, rng);
    const auto back = from_text(to_text(psi));
    EXPECT_EQ(back.space(), psi.space());
    for (std::size_t i = 0; i < psi.dim(); ++i)
        EXPECT_EQ(back.amplitudes()(static_cast<Eigen::Index>(i)), psi.amplitudes()(static_cast<Eigen::Index>(i)));
}

TEST(Serialization, SmallAmplitudesOmitted) {
    StateVector psi = basis_state({1, 0}, 2, 1);
    psi.set_amplitude({0, 1}, 1e-16);
    const auto text = to_text(psi);
    EXPECT_EQ(text.find("0,1 "), std::string::npos);
    EXPECT_NE(text.find("1,0 "), std::string::npos);
}

TEST(DensityOperatorValidate, RejectsNegativeEigenvalue) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    EXPECT_THROW(DensityOperator(FockSpace(1, 1), m).validate(), NumericalError);
}
