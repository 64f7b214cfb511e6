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
 * Six-mode CNOT protocol.
 *
 * Modes: 0 herald (L), 1 star (L), 2 ancilla (L), 3 star (R), 4 ancilla (R),
 * 5 herald (R). The ancilla is |1_0> (e^{i delta}|1_2 0_4> + |0_2 1_4>)/sqrt2
 * |1_5>. Each lab folds the parity of its star/ancilla pair into its herald
 * mode with two CNOTs, uses the herald to conditionally flip one of the pair,
 * then interferes the pair on a beam splitter and counts photons.
 *
 * The ParityFeedForward variant replaces the herald modes by local parity
 * measurements followed by a classically controlled NOT; its herald counts
 * are reconstructed as 1 xor parity.
 */

#pragma once

#include <map>

#include "qtel/gates.hpp"
#include "qtel/protocols/config.hpp"
#include "qtel/protocols/linear.hpp"
#include "qtel/protocols/records.hpp"

namespace qtel {

inline constexpr int kCnotModes = 6;
inline constexpr int kCnotCutoff = 2;

namespace detail {

inline StateVector cnot_ancilla(double delta, bool supplied, bool herald_photons) {
    const int h = herald_photons ? 1 : 0;
    StateVector anc = StateVector::zero(FockSpace(kCnotModes, kCnotCutoff));
    if (supplied) {
        anc.set_amplitude({h, 0, 1, 0, 0, h}, std::polar(1.0, delta) / std::sqrt(2.0));
        anc.set_amplitude({h, 0, 0, 0, 1, h}, 1.0 / std::sqrt(2.0));
    } else {
        anc.set_amplitude({h, 0, 0, 0, 0, h}, 1.0);
    }
    return anc;
}

inline std::map<Outcome, cplx> cnot_sequence_run(const StateVector &input) {
    const auto cx = cnot_fock_unitary(kCnotCutoff);
    const auto bs = beam_splitter_unitary(kCnotCutoff);
    Branches b = start(input);
    apply_all(b, cx.on({1, 0}));
    apply_all(b, cx.on({2, 0}));
    apply_all(b, cx.on({3, 5}));
    apply_all(b, cx.on({4, 5}));
    apply_all(b, cx.on({0, 2}));
    apply_all(b, cx.on({5, 3}));
    apply_all(b, bs.on({1, 2}));
    apply_all(b, bs.on({3, 4}));
    return number_readout(b);
}

inline std::map<Outcome, cplx> parity_feed_forward_run(const StateVector &input) {
    const auto parity = basis_projectors(MeasBasis::parity(), kCnotCutoff);
    const auto x = not_fock_unitary(kCnotCutoff);
    const auto bs = beam_splitter_unitary(kCnotCutoff);
    Branches b = measure_all(start(input), {1, 2}, parity);
    b = measure_all(b, {3, 4}, parity);
    for (auto &br : b) {
        // Even parity (outcome 0) triggers the NOT.
        if (br.record[0] == 0) br.state = apply_unitary(br.state, x.on({2}));
        if (br.record[1] == 0) br.state = apply_unitary(br.state, x.on({3}));
    }
    apply_all(b, bs.on({1, 2}));
    apply_all(b, bs.on({3, 4}));
    std::map<Outcome, cplx> out;
    for (const auto &[rec, amp] : number_readout(b)) {
        // rec = {pL, pR, n0..n5}; modes 0 and 5 are unused here.
        Outcome counts{1 - rec[0], rec[3], rec[4], rec[5], rec[6], 1 - rec[1]};
        out[counts] += amp;
    }
    return out;
}

} // namespace detail

/// Effects of the circuit with the entangled pair supplied (or lost).
inline LinearPovm cnot_povm_branch(double delta, Variant variant, bool supplied) {
    const bool seq = variant == Variant::CnotSequence;
    const StateVector anc = detail::cnot_ancilla(delta, supplied, seq);
    return LinearPovm::from_circuit([&](int a) {
        const StateVector in = place_star(anc, 1, 3, a);
        return seq ? detail::cnot_sequence_run(in) : detail::parity_feed_forward_run(in);
    });
}

/**
 * Full protocol effects: the pair is supplied with probability eta and
 * lost (|0_2 0_4>, herald photons kept) otherwise.
 */
inline LinearPovm cnot_povm(const ProtocolConfig &config, LossAccounting accounting = LossAccounting::Blind) {
    config.validate();
    const auto ok = cnot_povm_branch(config.delta, config.variant, true);
    if (config.eta == 1.0 && accounting == LossAccounting::Blind) return ok;
    const auto lost = cnot_povm_branch(config.delta, config.variant, false);
    return ok.mix(config.eta, lost, 1.0 - config.eta, accounting == LossAccounting::Flagged);
}

/// Distribution over six-mode count records (what the detectors see).
inline OutcomeDistribution cnot_distribution(const SourceModel &source, const ProtocolConfig &config) {
    source.validate();
    return cnot_povm(config, LossAccounting::Blind).distribution(stellar_block(source));
}

/// Per-window outcome model. Flagged accounting appends the loss flag to
/// each record.
inline OutcomeModel cnot_model(double epsilon, const ProtocolConfig &config,
                               LossAccounting accounting = LossAccounting::Flagged) {
    return povm_model(cnot_povm(config, accounting), epsilon);
}

} // namespace qtel
