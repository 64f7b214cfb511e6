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

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtel {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Caller passed something outside an operation's contract (bad mode index,
/// parameter out of range, malformed input).
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// A numerical invariant was violated while computing. These indicate a
/// bug or an input the model cannot represent, never bad luck.
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// Amplitude would be pushed outside the truncated space a gate preserves.
class LeakageError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Fisher information undefined: an outcome of vanishing probability has a
/// non-vanishing derivative, or an SLD is requested on the kernel of rho.
class FisherDivergence : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Label of one measurement record: detector counts per mode, or basis
/// outcome indices (0 for '+', 1 for '-') for two-outcome measurements.
using Outcome = std::vector<int>;

/// Finite map from measurement records to probabilities.
using OutcomeDistribution = std::map<Outcome, double>;

inline double total_probability(const OutcomeDistribution &dist) {
    double sum = 0.0;
    for (const auto &[_, p] : dist) sum += p;
    return sum;
}

/// Distance on the circle between two phases, in [0, pi].
inline double wrapped_distance(double a, double b) {
    double d = std::remainder(a - b, 2.0 * kPi);
    return std::abs(d);
}

/// Maps a phase into [0, 2pi).
inline double wrap_phase(double a) {
    double w = std::fmod(a, 2.0 * kPi);
    return w < 0.0 ? w + 2.0 * kPi : w;
}

} // namespace qtel
