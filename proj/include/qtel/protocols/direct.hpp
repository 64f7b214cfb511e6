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
 * Direct two-basis measurement of the stellar modes: one lab measures in X,
 * the other in the rotated basis |+-_delta>. This is the optimal phase
 * measurement when both stellar modes are available locally, and the final
 * stage of the memory protocols.
 */

#pragma once

#include <Eigen/Dense>

#include "qtel/gates.hpp"
#include "qtel/protocols/config.hpp"
#include "qtel/protocols/linear.hpp"

namespace qtel {

/**
 * Effects for the direct measurement. Records are {l, r} with 0 for "+"
 * and 1 for "-" (the rotated lab's labels refer to |+-_delta>), plus the
 * record {-1, -1} for an empty window, which issues no measurement.
 */
inline LinearPovm direct_povm(double delta, bool swap_lab_bases = false) {
    const auto px = basis_projectors(MeasBasis::x(), 1);
    const auto pr = basis_projectors(MeasBasis::rotated(delta), 1);
    const auto &pl = swap_lab_bases ? pr : px;
    const auto &pR = swap_lab_bases ? px : pr;
    // Single-photon basis as (L, R) occupations: |10>, |01>.
    const int occ[2][2] = {{1, 0}, {0, 1}};
    std::vector<Outcome> outcomes{{-1, -1}};
    Eigen::Matrix3cd vac = Eigen::Matrix3cd::Zero();
    vac(0, 0) = 1.0;
    std::vector<Eigen::Matrix3cd> effects{vac};
    for (int l = 0; l < 2; ++l)
        for (int r = 0; r < 2; ++r) {
            const auto &a = pl[static_cast<std::size_t>(l)];
            const auto &b = pR[static_cast<std::size_t>(r)];
            Eigen::Matrix3cd e = Eigen::Matrix3cd::Zero();
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    e(i + 1, j + 1) = a(occ[i][0], occ[j][0]) * b(occ[i][1], occ[j][1]);
            outcomes.push_back({l, r});
            effects.push_back(e);
        }
    return LinearPovm(std::move(outcomes), std::move(effects));
}

/// Outcome distribution conditioned on a stellar photon, over {+-} x {+-_delta}.
inline OutcomeDistribution direct_distribution(const SourceModel &source, double delta, bool swap_lab_bases = false) {
    source.validate();
    const auto povm = direct_povm(delta, swap_lab_bases).filtered([](const Outcome &o) { return o[0] >= 0; });
    return povm.distribution(stellar_block({1.0, source.g, source.phi}));
}

/// Per-window model (includes the empty-window record).
inline OutcomeModel direct_model(double epsilon, double delta, bool swap_lab_bases = false) {
    return povm_model(direct_povm(delta, swap_lab_bases), epsilon);
}

} // namespace qtel
