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


/**
 * @file
 * Linear-optics baseline: each lab mixes its star mode with one half of a
 * delocalized single photon (|1_2 0_4> + e^{i delta}|0_2 1_4>)/sqrt2 on a
 * beam splitter and counts photons. The generalized form inserts arbitrary
 * passive two-mode unitaries U_L, U_R before the beam splitters.
 *
 * Register modes 0..3 hold star L, ancilla L, star R, ancilla R (labelled
 * 1..4 in records).
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "qtel/fisher.hpp"
#include "qtel/gates.hpp"
#include "qtel/protocols/linear.hpp"

namespace qtel {

inline constexpr int kGottesmanCutoff = 2;

inline LinearPovm gottesman_povm(double delta, const Eigen::Matrix2cd &u_l = Eigen::Matrix2cd::Identity(),
                                 const Eigen::Matrix2cd &u_r = Eigen::Matrix2cd::Identity()) {
    StateVector anc = StateVector::zero(FockSpace(4, kGottesmanCutoff));
    anc.set_amplitude({0, 1, 0, 0}, 1.0 / std::sqrt(2.0));
    anc.set_amplitude({0, 0, 0, 1}, std::polar(1.0, delta) / std::sqrt(2.0));
    const auto gl = passive_unitary(u_l, kGottesmanCutoff).on({0, 1});
    const auto gr = passive_unitary(u_r, kGottesmanCutoff).on({2, 3});
    const auto bs = beam_splitter_unitary(kGottesmanCutoff);
    return LinearPovm::from_circuit([&](int a) {
        Branches b = start(place_star(anc, 0, 2, a));
        apply_all(b, gl);
        apply_all(b, gr);
        apply_all(b, bs.on({0, 1}));
        apply_all(b, bs.on({2, 3}));
        return number_readout(b);
    });
}

inline OutcomeDistribution gottesman_distribution(const SourceModel &source, double delta) {
    source.validate();
    return gottesman_povm(delta).distribution(stellar_block(source));
}

inline OutcomeModel gottesman_model(double epsilon, double delta) { return povm_model(gottesman_povm(delta), epsilon); }

/// Haar-random 2x2 unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal moved into Q.
inline Eigen::Matrix2cd haar_unitary(std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    Eigen::Matrix2cd z;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z(i, j) = cplx(n(rng), n(rng)) / std::sqrt(2.0);
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
    Eigen::Matrix2cd q = qr.householderQ();
    const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 2; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

struct BoundSearchResult {
    double max_fisher = 0.0;
    Eigen::Matrix2cd best_u_l = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd best_u_r = Eigen::Matrix2cd::Identity();
    int n_trials = 0;
};

/// Phase Fisher information of the generalized circuit at g = 1, maximized
/// over the probe phases.
inline double linear_fisher(const Eigen::Matrix2cd &u_l, const Eigen::Matrix2cd &u_r, double epsilon, double delta,
                            const std::vector<double> &phis) {
    const auto model = povm_model(gottesman_povm(delta, u_l, u_r), epsilon);
    double best = 0.0;
    for (double phi : phis) best = std::max(best, classical_fisher(model, {phi, 1.0}, {Parameter::Phi}).phiphi());
    return best;
}

/**
 * Random search over passive local unitaries for the largest phase Fisher
 * information a linear-optics lab pair can extract from the delocalized
 * photon resource.
 */
inline BoundSearchResult linear_bound_search(int n_trials, std::uint64_t rng_seed, double epsilon = 0.1,
                                             double delta = 0.0,
                                             const std::vector<double> &phis = {0.0, 0.9, 2.1}) {
    if (n_trials < 1) throw InvalidArgument("linear_bound_search: n_trials must be >= 1");
    std::mt19937_64 rng(rng_seed);
    BoundSearchResult res;
    res.n_trials = n_trials;
    for (int t = 0; t < n_trials; ++t) {
        const Eigen::Matrix2cd ul = haar_unitary(rng);
        const Eigen::Matrix2cd ur = haar_unitary(rng);
        const double f = linear_fisher(ul, ur, epsilon, delta, phis);
        if (f > res.max_fisher) {
            res.max_fisher = f;
            res.best_u_l = ul;
            res.best_u_r = ur;
        }
    }
    return res;
}

} // namespace qtel
