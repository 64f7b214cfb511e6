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
 * Closed-form outcome probabilities, for side-by-side display next to the
 * simulated values. Nothing in the simulation path includes this header.
 */

#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "qtel/protocols/records.hpp"
#include "qtel/sources.hpp"

namespace qtel::analytic {

/// Six-mode record probability with the pair always supplied.
inline std::optional<double> cnot_record(const std::vector<int> &c, const SourceModel &s, double delta) {
    const double e = s.epsilon;
    const double plus = s.g * std::cos(s.phi + delta);
    const double minus = s.g * std::cos(s.phi - delta);
    auto is = [&](std::vector<int> v) { return c == v; };
    if (is({1, 1, 0, 1, 0, 1}) || is({1, 0, 1, 0, 1, 1})) return e / 8 * (1 - plus);
    if (is({1, 1, 0, 0, 1, 1}) || is({1, 0, 1, 1, 0, 1})) return e / 8 * (1 + plus);
    if (is({0, 1, 0, 1, 0, 0}) || is({0, 0, 1, 0, 1, 0})) return e / 8 * (1 + minus);
    if (is({0, 1, 0, 0, 1, 0}) || is({0, 0, 1, 1, 0, 0})) return e / 8 * (1 - minus);
    if (classify_six_mode(c) == Herald::Vacuum) return (1 - e) / 8;
    return std::nullopt;
}

/// Direct measurement, conditioned on a photon; l, r in {0: +, 1: -}.
inline double direct_outcome(int l, int r, const SourceModel &s, double delta) {
    const double sign = (l == r) ? 1.0 : -1.0;
    return 0.25 * (1 + sign * s.g * std::cos(s.phi + delta));
}

/// Unmodified memory protocol: probability of +_delta given n_minus.
inline double memory_unmodified_plus(int n_minus, const SourceModel &s, double delta) {
    const double sign = (n_minus % 2 == 0) ? 1.0 : -1.0;
    return 0.5 * (1 + sign * s.g * std::cos(s.phi + delta));
}

} // namespace qtel::analytic
