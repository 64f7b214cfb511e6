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
 * Circuit execution with mid-circuit measurement branches, and the reduction
 * of a circuit to effect operators on the stellar source space.
 *
 * Every protocol circuit acts linearly on the stellar input. Running it once
 * per source-basis state {|00>, |10>, |01>} gives, for each final record k,
 * the amplitude vector c_k(a). The effect E_k = conj(c_k) c_k^T then yields
 * p_k = Tr(E_k rho_source) for any source state, so parameter sweeps never
 * re-run the circuit.
 */

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qtel/core.hpp"
#include "qtel/fisher.hpp"
#include "qtel/fock.hpp"
#include "qtel/sources.hpp"

namespace qtel {

/// An unnormalized circuit branch labelled by the measurement record so far.
struct Branch {
    Outcome record;
    StateVector state;
};

using Branches = std::vector<Branch>;

inline Branches start(const StateVector &psi) { return {{{}, psi}}; }

inline void apply_all(Branches &bs, const ModeUnitary &u) {
    for (auto &b : bs) b.state = apply_unitary(b.state, u);
}

/// Measures `modes` with local projectors; each branch splits and the
/// outcome index is appended to its record. Branches with no weight are
/// dropped.
inline Branches measure_all(const Branches &bs, const std::vector<int> &modes,
                            const std::vector<Eigen::MatrixXcd> &projectors, double drop_below = 1e-28) {
    Branches out;
    for (const auto &b : bs)
        for (std::size_t k = 0; k < projectors.size(); ++k) {
            StateVector s = apply_operator(b.state, modes, projectors[k]);
            if (s.amplitudes().squaredNorm() <= drop_below) continue;
            Outcome rec = b.record;
            rec.push_back(static_cast<int>(k));
            out.push_back({std::move(rec), std::move(s)});
        }
    return out;
}

/// Final number measurement of every mode: record -> amplitude, with the
/// occupation tuple appended to each branch record.
inline std::map<Outcome, cplx> number_readout(const Branches &bs, double drop_below = 1e-30) {
    std::map<Outcome, cplx> out;
    for (const auto &b : bs)
        for (std::size_t i = 0; i < b.state.dim(); ++i) {
            const cplx a = b.state.amplitudes()(static_cast<Eigen::Index>(i));
            if (std::norm(a) <= drop_below) continue;
            Outcome rec = b.record;
            const auto occ = b.state.space().occupation_of(i);
            rec.insert(rec.end(), occ.begin(), occ.end());
            out[rec] += a;
        }
    return out;
}

/**
 * Places source-basis state `a` (0: |00>, 1: |10>, 2: |01>) on the star
 * modes of an ancilla state whose star modes are empty.
 */
inline StateVector place_star(const StateVector &ancilla, int mode_l, int mode_r, int a) {
    const auto &basis = source_basis();
    const auto &occ_star = basis.at(static_cast<std::size_t>(a));
    StateVector out = StateVector::zero(ancilla.space());
    for (std::size_t i = 0; i < ancilla.dim(); ++i) {
        const cplx amp = ancilla.amplitudes()(static_cast<Eigen::Index>(i));
        if (amp == 0.0) continue;
        auto occ = ancilla.space().occupation_of(i);
        if (occ[static_cast<std::size_t>(mode_l)] != 0 || occ[static_cast<std::size_t>(mode_r)] != 0)
            throw InvalidArgument("place_star: ancilla occupies a star mode");
        occ[static_cast<std::size_t>(mode_l)] = occ_star[0];
        occ[static_cast<std::size_t>(mode_r)] = occ_star[1];
        out.set_amplitude(occ, amp);
    }
    return out;
}

/// Effect operators on the 3-dim source space, one per record.
class LinearPovm {
  public:
    LinearPovm() = default;
    LinearPovm(std::vector<Outcome> outcomes, std::vector<Eigen::Matrix3cd> effects)
        : outcomes_(std::move(outcomes)), effects_(std::move(effects)) {}

    /// Runs `circuit` on each source-basis input and collects the effects.
    static LinearPovm from_circuit(const std::function<std::map<Outcome, cplx>(int)> &circuit) {
        std::map<Outcome, Eigen::Vector3cd> amps;
        for (int a = 0; a < 3; ++a)
            for (const auto &[rec, c] : circuit(a)) {
                auto it = amps.try_emplace(rec, Eigen::Vector3cd::Zero()).first;
                it->second(a) += c;
            }
        LinearPovm p;
        for (const auto &[rec, c] : amps) {
            p.outcomes_.push_back(rec);
            p.effects_.push_back(c.conjugate() * c.transpose());
        }
        return p;
    }

    const std::vector<Outcome> &outcomes() const { return outcomes_; }
    const std::vector<Eigen::Matrix3cd> &effects() const { return effects_; }
    std::size_t size() const { return outcomes_.size(); }

    /// Sum of effects; the identity for a complete measurement.
    Eigen::Matrix3cd total() const {
        Eigen::Matrix3cd t = Eigen::Matrix3cd::Zero();
        for (const auto &e : effects_) t += e;
        return t;
    }

    std::vector<double> probabilities(const Eigen::Matrix3cd &rho) const {
        std::vector<double> p;
        p.reserve(effects_.size());
        for (const auto &e : effects_) p.push_back((e * rho).trace().real());
        return p;
    }

    OutcomeDistribution distribution(const Eigen::Matrix3cd &rho, double drop_below = 0.0) const {
        OutcomeDistribution d;
        const auto p = probabilities(rho);
        for (std::size_t k = 0; k < p.size(); ++k)
            if (p[k] > drop_below) d[outcomes_[k]] += p[k];
        return d;
    }

    /// Weighted mixture. With `tag`, each record of this POVM gets a trailing
    /// 0 and each record of `other` a trailing 1, keeping them distinct;
    /// otherwise coinciding records are merged.
    LinearPovm mix(double w_self, const LinearPovm &other, double w_other, bool tag) const {
        std::map<Outcome, Eigen::Matrix3cd> acc;
        auto add = [&](const LinearPovm &p, double w, int flag) {
            if (w == 0.0) return;
            for (std::size_t k = 0; k < p.size(); ++k) {
                Outcome rec = p.outcomes_[k];
                if (tag) rec.push_back(flag);
                auto it = acc.try_emplace(rec, Eigen::Matrix3cd::Zero()).first;
                it->second += w * p.effects_[k];
            }
        };
        add(*this, w_self, 0);
        add(other, w_other, 1);
        LinearPovm out;
        for (auto &[rec, e] : acc) {
            out.outcomes_.push_back(rec);
            out.effects_.push_back(e);
        }
        return out;
    }

    /// Keeps only records accepted by `keep` (e.g. conditioning on a herald).
    LinearPovm filtered(const std::function<bool(const Outcome &)> &keep) const {
        LinearPovm out;
        for (std::size_t k = 0; k < size(); ++k)
            if (keep(outcomes_[k])) {
                out.outcomes_.push_back(outcomes_[k]);
                out.effects_.push_back(effects_[k]);
            }
        return out;
    }

  private:
    std::vector<Outcome> outcomes_;
    std::vector<Eigen::Matrix3cd> effects_;
};

namespace detail {

// Stellar block without range validation, so finite differences may step
// marginally past g = 0.
inline Eigen::Matrix3cd raw_stellar_block(double epsilon, double g, double phi) {
    const cplx nu = g * std::polar(1.0, -phi);
    Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
    rho(0, 0) = 1.0 - epsilon;
    rho(1, 1) = rho(2, 2) = epsilon / 2.0;
    rho(1, 2) = epsilon / 2.0 * std::conj(nu);
    rho(2, 1) = epsilon / 2.0 * nu;
    return rho;
}

} // namespace detail

/// Outcome model over (phi, g) at fixed epsilon.
inline OutcomeModel povm_model(const LinearPovm &povm, double epsilon) {
    return OutcomeModel(povm.outcomes(), [povm, epsilon](const ParamPoint &x) {
        return povm.probabilities(detail::raw_stellar_block(epsilon, x.g, x.phi));
    });
}

} // namespace qtel
