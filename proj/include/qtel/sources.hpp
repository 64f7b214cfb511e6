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
 * Stellar source states and the time-bin arrival model.
 *
 * The star is a weak thermal source truncated at first order in the mean
 * photon number epsilon: it delivers either vacuum or one photon shared
 * coherently between the left and right telescopes. Two-photon terms are
 * dropped exactly.
 */

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "qtel/core.hpp"
#include "qtel/fock.hpp"

namespace qtel {

/// Estimated parameters, in the order used by every Fisher matrix.
enum class Parameter { Phi = 0, G = 1 };

inline const char *to_string(Parameter p) { return p == Parameter::Phi ? "phi" : "g"; }

/// Weak thermal source: epsilon photons per mode, complex visibility
/// nu = g e^{-i phi}.
struct SourceModel {
    double epsilon = 0.1;
    double g = 1.0;
    double phi = 0.0;

    cplx visibility() const { return g * std::polar(1.0, -phi); }

    void validate() const {
        if (!(epsilon >= 0.0 && epsilon <= 1.0))
            throw InvalidArgument("SourceModel: epsilon must lie in [0, 1], got " + std::to_string(epsilon));
        if (!(g >= 0.0 && g <= 1.0))
            throw InvalidArgument("SourceModel: g must lie in [0, 1], got " + std::to_string(g));
        if (!std::isfinite(phi)) throw InvalidArgument("SourceModel: phi must be finite");
    }

    friend bool operator==(const SourceModel &, const SourceModel &) = default;
};

/// N time-bins of duration tau making up one observation window T = N tau.
struct TimeBinConfig {
    int n_bins = 1;
    double tau = 1.0;

    double window() const { return n_bins * tau; }

    void validate() const {
        if (n_bins < 1) throw InvalidArgument("TimeBinConfig: n_bins must be >= 1");
        if (!(tau > 0.0)) throw InvalidArgument("TimeBinConfig: tau must be positive");
    }

    friend bool operator==(const TimeBinConfig &, const TimeBinConfig &) = default;
};

/// Outcome of one window: no photon (bin == 0) or the 1-based arrival bin.
struct Arrival {
    int bin = 0;

    bool photon() const { return bin > 0; }
    static Arrival none() { return {0}; }
    static Arrival in_bin(int n) { return {n}; }

    friend bool operator==(const Arrival &, const Arrival &) = default;
};

/// Source-space basis {|0_L 0_R>, |1_L 0_R>, |0_L 1_R>}; star modes ordered (L, R).
inline const std::array<OccupationState, 3> &source_basis() {
    static const std::array<OccupationState, 3> basis{{{0, 0}, {1, 0}, {0, 1}}};
    return basis;
}

/// First-order stellar state on the source basis.
inline Eigen::Matrix3cd stellar_block(const SourceModel &s) {
    s.validate();
    const cplx nu = s.visibility();
    Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
    rho(0, 0) = 1.0 - s.epsilon;
    rho(1, 1) = rho(2, 2) = s.epsilon / 2.0;
    rho(1, 2) = s.epsilon / 2.0 * std::conj(nu);
    rho(2, 1) = s.epsilon / 2.0 * nu;
    return rho;
}

inline Eigen::Matrix3cd stellar_block_derivative(const SourceModel &s, Parameter p) {
    s.validate();
    Eigen::Matrix3cd d = Eigen::Matrix3cd::Zero();
    // d nu / d phi = -i nu, d nu / d g = e^{-i phi}
    const cplx dnu = p == Parameter::Phi ? -kI * s.visibility() : std::polar(1.0, -s.phi);
    d(1, 2) = s.epsilon / 2.0 * std::conj(dnu);
    d(2, 1) = s.epsilon / 2.0 * dnu;
    return d;
}

namespace detail {

inline DensityOperator embed_source_block(const Eigen::Matrix3cd &block, int n_max) {
    const FockSpace space(2, n_max);
    const auto d = static_cast<Eigen::Index>(space.dim());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    const auto &basis = source_basis();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            m(static_cast<Eigen::Index>(space.index_of(basis[static_cast<std::size_t>(a)])),
              static_cast<Eigen::Index>(space.index_of(basis[static_cast<std::size_t>(b)]))) = block(a, b);
    return DensityOperator(space, m);
}

} // namespace detail

/// Two-mode (L, R) stellar density operator at the given cutoff.
inline DensityOperator stellar_density(const SourceModel &s, int n_max = 1) {
    auto rho = detail::embed_source_block(stellar_block(s), n_max);
    rho.validate();
    return rho;
}

inline DensityOperator stellar_density_derivative(const SourceModel &s, Parameter p, int n_max = 1) {
    return detail::embed_source_block(stellar_block_derivative(s, p), n_max);
}

/**
 * Single-photon block on {|1_L 0_R>, |0_L 1_R>}. Normalized form is
 * (1/2)[[1, nu*], [nu, 1]]; the unnormalized form carries the factor epsilon.
 */
inline Eigen::Matrix2cd single_photon_conditional(const SourceModel &s, bool normalized = true) {
    s.validate();
    if (s.epsilon == 0.0 && normalized)
        throw InvalidArgument("single_photon_conditional: epsilon = 0 has no single-photon sector");
    const cplx nu = s.visibility();
    Eigen::Matrix2cd rho;
    rho << 1.0, std::conj(nu), nu, 1.0;
    return rho * (normalized ? 0.5 : s.epsilon / 2.0);
}

inline Eigen::Matrix2cd single_photon_conditional_derivative(const SourceModel &s, Parameter p,
                                                             bool normalized = true) {
    s.validate();
    if (s.epsilon == 0.0 && normalized)
        throw InvalidArgument("single_photon_conditional: epsilon = 0 has no single-photon sector");
    const cplx dnu = p == Parameter::Phi ? -kI * s.visibility() : std::polar(1.0, -s.phi);
    Eigen::Matrix2cd d;
    d << 0.0, std::conj(dnu), dnu, 0.0;
    return d * (normalized ? 0.5 : s.epsilon / 2.0);
}

/// Pure single-photon state (e^{i phi}|1_L 0_R> + |0_L 1_R>)/sqrt2 of a point source.
inline Eigen::Vector2cd point_source_photon(double phi) {
    return Eigen::Vector2cd(std::polar(1.0, phi), 1.0) / std::sqrt(2.0);
}

/**
 * Samples the arrival of at most one photon in a window of N bins, each bin
 * receiving the photon with probability epsilon. The window is empty with
 * probability 1 - epsilon N; otherwise the bin is uniform.
 */
inline Arrival sample_arrival(const TimeBinConfig &config, double epsilon, std::mt19937_64 &rng) {
    config.validate();
    if (!(epsilon >= 0.0)) throw InvalidArgument("sample_arrival: epsilon must be non-negative");
    const double p_window = epsilon * config.n_bins;
    if (p_window > 1.0 + 1e-15)
        throw InvalidArgument("sample_arrival: epsilon * N = " + std::to_string(p_window) + " exceeds 1");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    if (u >= p_window) return Arrival::none();
    const int bin = static_cast<int>(u / epsilon) + 1;
    return Arrival::in_bin(std::min(bin, config.n_bins));
}

inline Arrival sample_arrival(const TimeBinConfig &config, double epsilon, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_arrival(config, epsilon, rng);
}

} // namespace qtel
