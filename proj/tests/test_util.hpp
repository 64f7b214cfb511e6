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

// Shared helpers for the test suite: random generators and independent
// reference constructions (ladder operators built from scratch).

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "qtel/fock.hpp"

namespace qtel::testing {

inline StateVector random_state(int modes, int n_max, std::mt19937_64 &rng) {
    const FockSpace space(modes, n_max);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd v(static_cast<Eigen::Index>(space.dim()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(normal(rng), normal(rng));
    return StateVector(space, v / v.norm());
}

/// Random state supported on occupancies <= 1 (qubit subspace).
inline StateVector random_qubit_state(int modes, int n_max, std::mt19937_64 &rng) {
    StateVector s = random_state(modes, n_max, rng);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const auto occ = s.space().occupation_of(i);
        for (int n : occ)
            if (n > 1) s.amplitudes()(static_cast<Eigen::Index>(i)) = 0.0;
    }
    return s.normalized();
}

/// Annihilation operator of `mode` on the full register, built directly from
/// a|n> = sqrt(n)|n-1>.
inline Eigen::MatrixXcd annihilator(const FockSpace &space, int mode) {
    const auto d = static_cast<Eigen::Index>(space.dim());
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t i = 0; i < space.dim(); ++i) {
        auto occ = space.occupation_of(i);
        if (occ[static_cast<std::size_t>(mode)] == 0) continue;
        const double amp = std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(mode)]));
        occ[static_cast<std::size_t>(mode)] -= 1;
        a(static_cast<Eigen::Index>(space.index_of(occ)), static_cast<Eigen::Index>(i)) = amp;
    }
    return a;
}

inline Eigen::MatrixXcd number_operator(const FockSpace &space) {
    const auto d = static_cast<Eigen::Index>(space.dim());
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t i = 0; i < space.dim(); ++i) {
        int total = 0;
        for (int k : space.occupation_of(i)) total += k;
        n(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = static_cast<double>(total);
    }
    return n;
}

/// Full-register matrix of a gate, obtained by applying it column by column.
inline Eigen::MatrixXcd full_matrix(const FockSpace &space, const ModeUnitary &u) {
    const auto d = static_cast<Eigen::Index>(space.dim());
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
        e(c) = 1.0;
        m.col(c) = apply_operator(StateVector(space, e), u.targets, u.matrix).amplitudes();
    }
    return m;
}

inline double max_abs(const Eigen::MatrixXcd &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

} // namespace qtel::testing
