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
 * Gate and measurement library for single-rail photonic qubits.
 *
 * Every gate is returned as a ModeUnitary on default target modes {0} or
 * {0, 1}; use ModeUnitary::on() to place it. Gates that only make sense on
 * the qubit subspace (occupancy <= 1) mark higher occupancies as outside
 * their domain, so applying them to such states raises LeakageError.
 */

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "qtel/core.hpp"
#include "qtel/fock.hpp"

namespace qtel {

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline std::vector<bool> qubit_domain(int arity, int n_max) {
    const FockSpace local(arity, n_max);
    std::vector<bool> dom(local.dim());
    for (std::size_t l = 0; l < local.dim(); ++l) {
        const auto occ = local.occupation_of(l);
        dom[l] = std::all_of(occ.begin(), occ.end(), [](int n) { return n <= 1; });
    }
    return dom;
}

/// Permutation gate on the qubit subspace, identity elsewhere.
template <typename Map>
ModeUnitary qubit_permutation(int arity, int n_max, Map map) {
    const FockSpace local(arity, n_max);
    const auto d = static_cast<Eigen::Index>(local.dim());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    auto dom = qubit_domain(arity, n_max);
    for (std::size_t l = 0; l < local.dim(); ++l) {
        if (!dom[l]) {
            m(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l)) = 1.0;
            continue;
        }
        const auto [occ, phase] = map(local.occupation_of(l));
        m(static_cast<Eigen::Index>(local.index_of(occ)), static_cast<Eigen::Index>(l)) = phase;
    }
    std::vector<int> targets(static_cast<std::size_t>(arity));
    std::iota(targets.begin(), targets.end(), 0);
    return {targets, n_max, m, dom};
}

} // namespace detail

/**
 * Lifts a passive linear-optics mode transformation to the truncated Fock
 * space. Creation operators transform as a_j^dagger -> sum_k M(k, j)
 * a_k^dagger. Photon-number sectors with total occupancy <= n_max are
 * represented exactly; higher sectors are outside the gate's domain.
 */
inline ModeUnitary passive_unitary(const Eigen::MatrixXcd &mode_matrix, int n_max = 2) {
    const auto m = static_cast<int>(mode_matrix.rows());
    if (mode_matrix.cols() != m) throw InvalidArgument("passive_unitary: mode matrix must be square");
    const FockSpace local(m, n_max);
    const auto d = static_cast<Eigen::Index>(local.dim());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
    std::vector<bool> dom(local.dim());
    for (std::size_t l = 0; l < local.dim(); ++l) {
        const auto in = local.occupation_of(l);
        const int total = std::accumulate(in.begin(), in.end(), 0);
        dom[l] = total <= n_max;
        if (!dom[l]) {
            u(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l)) = 1.0;
            continue;
        }
        // Expand prod_j (sum_k M(k,j) a_k^dagger)^{n_j} as a polynomial in
        // creation operators, keyed by the exponent vector.
        std::map<OccupationState, cplx> poly{{OccupationState(static_cast<std::size_t>(m), 0), 1.0}};
        for (int j = 0; j < m; ++j)
            for (int rep = 0; rep < in[static_cast<std::size_t>(j)]; ++rep) {
                std::map<OccupationState, cplx> next;
                for (const auto &[mono, c] : poly)
                    for (int k = 0; k < m; ++k) {
                        const cplx coeff = mode_matrix(k, j);
                        if (coeff == 0.0) continue;
                        auto grown = mono;
                        ++grown[static_cast<std::size_t>(k)];
                        next[grown] += c * coeff;
                    }
                poly = std::move(next);
            }
        double in_norm = 1.0;
        for (int n : in) in_norm *= detail::factorial(n);
        for (const auto &[mono, c] : poly) {
            double out_norm = 1.0;
            for (int n : mono) out_norm *= detail::factorial(n);
            u(static_cast<Eigen::Index>(local.index_of(mono)), static_cast<Eigen::Index>(l)) +=
                c * std::sqrt(out_norm / in_norm);
        }
    }
    std::vector<int> targets(static_cast<std::size_t>(m));
    std::iota(targets.begin(), targets.end(), 0);
    return {targets, n_max, u, dom};
}

/// Symmetric 50:50 beam splitter with phase i on reflection:
/// |10> -> (|10> + i|01>)/sqrt2 on the single-photon sector.
inline ModeUnitary beam_splitter_unitary(int n_max = 2) {
    Eigen::MatrixXcd bs(2, 2);
    bs << 1.0, kI, kI, 1.0;
    bs /= std::sqrt(2.0);
    return passive_unitary(bs, n_max);
}

/// |n> -> e^{i n angle} |n>.
inline ModeUnitary phase_shift_unitary(double angle, int n_max = 2) {
    const auto d = static_cast<Eigen::Index>(n_max + 1);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index n = 0; n < d; ++n) m(n, n) = std::polar(1.0, static_cast<double>(n) * angle);
    return {{0}, n_max, m, std::vector<bool>(static_cast<std::size_t>(d), true)};
}

/// Fock-basis CNOT: a photon in the control toggles the target's occupancy.
/// Targets {control, target}.
inline ModeUnitary cnot_fock_unitary(int n_max = 2) {
    return detail::qubit_permutation(2, n_max, [](OccupationState occ) {
        if (occ[0] == 1) occ[1] ^= 1;
        return std::pair<OccupationState, cplx>{occ, 1.0};
    });
}

/// Ideal single-rail NOT on the {0, 1} occupancy subspace.
inline ModeUnitary not_fock_unitary(int n_max = 2) {
    return detail::qubit_permutation(1, n_max, [](OccupationState occ) {
        occ[0] ^= 1;
        return std::pair<OccupationState, cplx>{occ, 1.0};
    });
}

/// Controlled phase: |11> -> -|11>, other qubit basis states fixed.
inline ModeUnitary cz_unitary(int n_max = 2) {
    return detail::qubit_permutation(2, n_max, [](OccupationState occ) {
        const cplx phase = (occ[0] == 1 && occ[1] == 1) ? -1.0 : 1.0;
        return std::pair<OccupationState, cplx>{occ, phase};
    });
}

/// Z: |1> -> -|1>.
inline ModeUnitary z_unitary(int n_max = 2) {
    return detail::qubit_permutation(1, n_max, [](OccupationState occ) {
        const cplx phase = occ[0] == 1 ? -1.0 : 1.0;
        return std::pair<OccupationState, cplx>{occ, phase};
    });
}

// ---------------------------------------------------------------------------
// Measurement bases.

struct MeasBasis {
    enum class Kind { Number, X, Rotated, Parity };
    Kind kind = Kind::Number;
    double delta = 0.0;

    static MeasBasis number() { return {Kind::Number, 0.0}; }
    static MeasBasis x() { return {Kind::X, 0.0}; }
    static MeasBasis rotated(double delta) { return {Kind::Rotated, delta}; }
    static MeasBasis parity() { return {Kind::Parity, 0.0}; }

    /// Number of modes the basis acts on.
    int arity() const { return kind == Kind::Parity ? 2 : 1; }
};

/// Basis vector |+_delta> (sign = +1) or |-_delta> (sign = -1) embedded in a
/// single mode with cutoff n_max.
inline Eigen::VectorXcd rotated_vector(double delta, int sign, int n_max) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_max + 1);
    v(0) = 1.0 / std::sqrt(2.0);
    v(1) = static_cast<double>(sign) * std::polar(1.0, delta) / std::sqrt(2.0);
    return v;
}

/**
 * Local projectors for a measurement basis. For X and Rotated(delta) the
 * order is {+, -}; they resolve the identity only on the qubit subspace.
 * Number yields one projector per occupancy 0..n_max. Parity acts on a mode
 * pair and yields {even, odd} total occupancy.
 */
inline std::vector<Eigen::MatrixXcd> basis_projectors(const MeasBasis &basis, int n_max = 1) {
    std::vector<Eigen::MatrixXcd> out;
    switch (basis.kind) {
    case MeasBasis::Kind::Number: {
        for (int n = 0; n <= n_max; ++n) {
            Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
            p(n, n) = 1.0;
            out.push_back(p);
        }
        break;
    }
    case MeasBasis::Kind::X:
    case MeasBasis::Kind::Rotated: {
        const double delta = basis.kind == MeasBasis::Kind::X ? 0.0 : basis.delta;
        for (int sign : {+1, -1}) {
            const Eigen::VectorXcd v = rotated_vector(delta, sign, n_max);
            out.push_back(v * v.adjoint());
        }
        break;
    }
    case MeasBasis::Kind::Parity: {
        const FockSpace local(2, n_max);
        const auto d = static_cast<Eigen::Index>(local.dim());
        Eigen::MatrixXcd even = Eigen::MatrixXcd::Zero(d, d);
        Eigen::MatrixXcd odd = Eigen::MatrixXcd::Zero(d, d);
        for (std::size_t l = 0; l < local.dim(); ++l) {
            const auto occ = local.occupation_of(l);
            auto &target = ((occ[0] + occ[1]) % 2 == 0) ? even : odd;
            target(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l)) = 1.0;
        }
        out.push_back(even);
        out.push_back(odd);
        break;
    }
    }
    return out;
}

/// Single-qubit Hadamard assembled from the X basis: H = |+><0| + |-><1|.
inline ModeUnitary hadamard_unitary(int n_max = 2) {
    const auto d = static_cast<Eigen::Index>(n_max + 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(d, d);
    h.block(0, 0, d, 2).setZero();
    h.col(0) = rotated_vector(0.0, +1, n_max);
    h.col(1) = rotated_vector(0.0, -1, n_max);
    std::vector<bool> dom(static_cast<std::size_t>(d), false);
    dom[0] = dom[1] = true;
    return {{0}, n_max, h, dom};
}

// ---------------------------------------------------------------------------
// Declarative gate specs.

struct GateSpec {
    enum class Kind { BeamSplitter, CnotFock, NotFock, Cz, Z, PhaseShift };
    Kind kind;
    std::vector<int> targets;
    double angle = 0.0;

    static int arity(Kind k) {
        switch (k) {
        case Kind::BeamSplitter:
        case Kind::CnotFock:
        case Kind::Cz:
            return 2;
        case Kind::NotFock:
        case Kind::Z:
        case Kind::PhaseShift:
            return 1;
        }
        return 0;
    }
};

inline ModeUnitary make_unitary(const GateSpec &spec, int n_max = 2) {
    if (static_cast<int>(spec.targets.size()) != GateSpec::arity(spec.kind))
        throw InvalidArgument("GateSpec: target count does not match gate arity");
    ModeUnitary u = [&] {
        switch (spec.kind) {
        case GateSpec::Kind::BeamSplitter:
            return beam_splitter_unitary(n_max);
        case GateSpec::Kind::CnotFock:
            return cnot_fock_unitary(n_max);
        case GateSpec::Kind::NotFock:
            return not_fock_unitary(n_max);
        case GateSpec::Kind::Cz:
            return cz_unitary(n_max);
        case GateSpec::Kind::Z:
            return z_unitary(n_max);
        case GateSpec::Kind::PhaseShift:
            return phase_shift_unitary(spec.angle, n_max);
        }
        throw InvalidArgument("GateSpec: unknown kind");
    }();
    return u.on(spec.targets);
}

inline StateVector apply(const StateVector &state, const GateSpec &spec) {
    return apply_unitary(state, make_unitary(spec, state.n_max()));
}

} // namespace qtel
