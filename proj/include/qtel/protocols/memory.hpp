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
 * Time-bin encoding into Bell pairs (modified protocol) and through
 * intermediate memory qubits (unmodified protocol).
 *
 * All registers here are qubit registers: FockSpace with n_max = 1, one
 * mode per qubit. Pair i carries binary digit i of the arrival bin, most
 * significant first. A star photon of partial visibility g is simulated as
 * the ensemble {(1 + s g)/2 : (e^{i phi}|10> + s|01>)/sqrt2, s = +-1}, which
 * reproduces the single-photon block exactly.
 */

#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qtel/gates.hpp"
#include "qtel/sources.hpp"

namespace qtel {

inline int pairs_for_bins(int n_bins) {
    if (n_bins < 1) throw InvalidArgument("number of time-bins must be >= 1");
    return static_cast<int>(std::bit_width(static_cast<unsigned>(n_bins)));
}

/// Digit i (0 = most significant) of n written with `width` bits.
inline int binary_digit(int n, int i, int width) { return (n >> (width - 1 - i)) & 1; }

inline void check_arrival(const Arrival &a, int n_bins) {
    if (a.bin < 0 || a.bin > n_bins)
        throw InvalidArgument("arrival bin " + std::to_string(a.bin) + " outside 1.." + std::to_string(n_bins));
}

enum class BellLabel { PhiPlus, PhiMinus, Other };

inline const char *to_string(BellLabel b) {
    switch (b) {
    case BellLabel::PhiPlus:
        return "|Φ+⟩";
    case BellLabel::PhiMinus:
        return "|Φ−⟩";
    case BellLabel::Other:
        return "|?⟩";
    }
    return "?";
}

inline Eigen::Vector4cd bell_vector(BellLabel b) {
    const double s = b == BellLabel::PhiMinus ? -1.0 : 1.0;
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v(0) = 1.0 / std::sqrt(2.0);
    v(3) = s / std::sqrt(2.0);
    return v;
}

/// Bell pairs split across the labs. Qubit 2i is pair i's L half, 2i+1 its R half.
struct BellRegister {
    int n_bins = 1;
    int n_pairs = 1;
    StateVector state = vacuum(2, 1);

    static BellRegister fresh(int n_bins) {
        BellRegister r;
        r.n_bins = n_bins;
        r.n_pairs = pairs_for_bins(n_bins);
        const StateVector phi(FockSpace(2, 1), bell_vector(BellLabel::PhiPlus));
        StateVector s = phi;
        for (int i = 1; i < r.n_pairs; ++i) s = tensor(s, phi);
        r.state = s;
        return r;
    }

    int qubits() const { return 2 * n_pairs; }

    /// Reduced two-qubit state of pair i.
    Eigen::MatrixXcd pair_density(int i) const {
        return partial_trace(DensityOperator::from_pure(state), {2 * i, 2 * i + 1}).matrix();
    }

    BellLabel label(int i, double tol = 1e-12) const {
        const Eigen::MatrixXcd rho = pair_density(i);
        for (BellLabel b : {BellLabel::PhiPlus, BellLabel::PhiMinus}) {
            const Eigen::Vector4cd v = bell_vector(b);
            if (std::abs((v.adjoint() * rho * v)(0).real() - 1.0) < tol) return b;
        }
        return BellLabel::Other;
    }

    std::string transcript() const {
        std::string s;
        for (int i = 0; i < n_pairs; ++i) s += to_string(label(i));
        return s;
    }
};

// ---------------------------------------------------------------------------
// Weighted ensemble of qubit-register states sharing one measurement record.
// Qubits are addressed by caller-chosen ids; measured qubits are contracted
// out of the register so it only holds what is still live.

class QubitEnsemble {
  public:
    QubitEnsemble(std::vector<double> weights, std::vector<StateVector> states, std::vector<int> ids)
        : weights_(std::move(weights)), states_(std::move(states)), ids_(std::move(ids)) {}

    const std::vector<double> &weights() const { return weights_; }
    const std::vector<StateVector> &states() const { return states_; }
    std::size_t qubits() const { return ids_.size(); }

    /// Appends a product factor holding the given new qubit ids.
    void append(const StateVector &factor, const std::vector<int> &ids) {
        if (static_cast<std::size_t>(factor.mode_count()) != ids.size())
            throw InvalidArgument("QubitEnsemble::append: id count does not match factor");
        for (auto &s : states_) s = tensor(s, factor);
        ids_.insert(ids_.end(), ids.begin(), ids.end());
    }

    void apply(const ModeUnitary &u, const std::vector<int> &ids) {
        const ModeUnitary placed = u.on(positions(ids));
        for (auto &s : states_) s = apply_unitary(s, placed);
    }

    /// Probabilities of the single-qubit basis {vectors}.
    std::vector<double> distribution(int id, const std::vector<Eigen::VectorXcd> &basis) const {
        const int pos = position(id);
        std::vector<double> p(basis.size(), 0.0);
        for (std::size_t c = 0; c < states_.size(); ++c)
            for (std::size_t k = 0; k < basis.size(); ++k)
                p[k] += weights_[c] * project(states_[c], pos, basis[k]).squaredNorm();
        return p;
    }

    /// Samples the measurement, conditions every component on the outcome
    /// and removes the qubit.
    std::size_t measure(int id, const std::vector<Eigen::VectorXcd> &basis, std::mt19937_64 &rng) {
        const auto p = distribution(id, basis);
        double total = 0.0;
        for (double v : p) total += v;
        if (std::abs(total - 1.0) > 1e-10) throw NumericalError("qubit register left the qubit subspace");
        const std::size_t k = detail::sample_index(p, rng);
        const int pos = position(id);
        ids_.erase(ids_.begin() + pos);
        if (ids_.empty()) {
            // Nothing left to condition.
            states_.clear();
            weights_.clear();
            return k;
        }
        std::vector<double> w;
        std::vector<StateVector> st;
        for (std::size_t c = 0; c < states_.size(); ++c) {
            StateVector rest = contract_mode(states_[c], pos, basis[k]);
            const double pc = rest.amplitudes().squaredNorm();
            if (pc <= 0.0) continue;
            w.push_back(weights_[c] * pc / p[k]);
            st.push_back(rest.normalized());
        }
        weights_ = std::move(w);
        states_ = std::move(st);
        return k;
    }

  private:
    int position(int id) const {
        for (std::size_t i = 0; i < ids_.size(); ++i)
            if (ids_[i] == id) return static_cast<int>(i);
        throw InvalidArgument("QubitEnsemble: unknown qubit id " + std::to_string(id));
    }
    std::vector<int> positions(const std::vector<int> &ids) const {
        std::vector<int> out;
        for (int id : ids) out.push_back(position(id));
        return out;
    }
    static Eigen::VectorXcd project(const StateVector &s, int pos, const Eigen::VectorXcd &v) {
        if (s.mode_count() == 1) return (v.adjoint() * s.amplitudes()).eval();
        return contract_mode(s, pos, v).amplitudes();
    }

    std::vector<double> weights_;
    std::vector<StateVector> states_;
    std::vector<int> ids_;
};

inline std::vector<Eigen::VectorXcd> basis_vectors(const MeasBasis &b) {
    const double delta = b.kind == MeasBasis::Kind::Rotated ? b.delta : 0.0;
    if (b.kind != MeasBasis::Kind::X && b.kind != MeasBasis::Kind::Rotated)
        throw InvalidArgument("basis_vectors: only X and Rotated bases are single-qubit rank-1");
    return {rotated_vector(delta, +1, 1), rotated_vector(delta, -1, 1)};
}

namespace detail {

inline constexpr int kStarL = 0;
inline constexpr int kStarR = 1;

/// Star-mode states (L, R) of one window: vacuum, or the unravelled photon.
inline QubitEnsemble star_ensemble(const Arrival &arrival, const SourceModel &source) {
    source.validate();
    const FockSpace sp(2, 1);
    if (!arrival.photon()) return QubitEnsemble({1.0}, {basis_state({0, 0}, 2, 1)}, {kStarL, kStarR});
    std::vector<double> w;
    std::vector<StateVector> st;
    for (int s : {+1, -1}) {
        const double weight = (1.0 + s * source.g) / 2.0;
        if (weight <= 0.0) continue;
        StateVector v = StateVector::zero(sp);
        v.set_amplitude({1, 0}, std::polar(1.0, source.phi) / std::sqrt(2.0));
        v.set_amplitude({0, 1}, static_cast<double>(s) / std::sqrt(2.0));
        w.push_back(weight);
        st.push_back(v);
    }
    return QubitEnsemble(std::move(w), std::move(st), {kStarL, kStarR});
}

inline StateVector phi_plus() { return StateVector(FockSpace(2, 1), bell_vector(BellLabel::PhiPlus)); }

/// Measures both halves of a pair in X; different results mean |Φ−> (digit 1).
inline int decode_pair(QubitEnsemble &e, int l, int r, std::mt19937_64 &rng) {
    const auto x = basis_vectors(MeasBasis::x());
    const auto a = e.measure(l, x, rng);
    const auto b = e.measure(r, x, rng);
    return a == b ? 0 : 1;
}

} // namespace detail

/**
 * Writes the arrival bin into the pairs: each lab applies CZ from its star
 * mode onto its half of every pair whose digit is 1. The photon is in one lab
 * or the other, so exactly one Z lands on each such pair, flipping it to
 * |Φ−>, and the star decouples. `star` is the photon state used to drive the
 * gates (any single-photon state gives the same register).
 */
inline BellRegister encode_time_bin_modified(const BellRegister &reg, const Arrival &arrival,
                                             const Eigen::Vector2cd &star = point_source_photon(0.0)) {
    check_arrival(arrival, reg.n_bins);
    if (!arrival.photon()) return reg;
    StateVector s = StateVector::zero(FockSpace(2, 1));
    s.set_amplitude({1, 0}, star(0));
    s.set_amplitude({0, 1}, star(1));
    StateVector joint = tensor(s, reg.state);
    const auto cz = cz_unitary(1);
    for (int i = 0; i < reg.n_pairs; ++i) {
        if (!binary_digit(arrival.bin, i, reg.n_pairs)) continue;
        joint = apply_unitary(joint, cz.on({0, 2 + 2 * i}));
        joint = apply_unitary(joint, cz.on({1, 3 + 2 * i}));
    }
    // Contract the star back out; a unit-norm remainder proves decoupling.
    const auto d = static_cast<Eigen::Index>(reg.state.dim());
    Eigen::VectorXcd rest = std::conj(s.amplitude({1, 0})) * joint.amplitudes().segment(2 * d, d) +
                            std::conj(s.amplitude({0, 1})) * joint.amplitudes().segment(d, d);
    if (std::abs(rest.norm() - 1.0) > 1e-12) throw NumericalError("star did not decouple from the Bell pairs");
    BellRegister out = reg;
    out.state = StateVector(reg.state.space(), rest);
    return out;
}

/// Reads the bin back with local X measurements and classical comparison.
inline Arrival decode_time_bin(const BellRegister &reg, std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    std::vector<int> ids;
    for (int q = 0; q < reg.qubits(); ++q) ids.push_back(q);
    QubitEnsemble e({1.0}, {reg.state}, ids);
    int n = 0;
    for (int i = 0; i < reg.n_pairs; ++i) n = 2 * n + detail::decode_pair(e, 2 * i, 2 * i + 1, rng);
    if (n > reg.n_bins) throw NumericalError("decoded bin exceeds the window");
    return n == 0 ? Arrival::none() : Arrival::in_bin(n);
}

struct MemoryRunResult {
    Arrival decoded;
    /// Final measurement: modified {l, r}; unmodified {final}; 0 = "+", 1 = "-".
    /// Empty when no photon was decoded.
    std::vector<int> outcome;
    int n_minus = 0;
    /// Probability that the final (rotated) measurement gives "+", given the
    /// record before it.
    double p_plus = 0.0;
};

/**
 * Modified protocol. Qubit ids: star L (0), star R (1), pair i halves
 * (2 + 2i, 3 + 2i). Every pair is present during encoding; pairs are then
 * decoded, and on a decoded arrival the star modes are measured in X (L) and
 * Rotated(delta) (R), or swapped.
 */
inline MemoryRunResult run_memory_modified(int n_bins, const Arrival &arrival, const SourceModel &source,
                                           double delta, std::uint64_t rng_seed, bool swap_lab_bases = false) {
    check_arrival(arrival, n_bins);
    std::mt19937_64 rng(rng_seed);
    const int k = pairs_for_bins(n_bins);
    QubitEnsemble e = detail::star_ensemble(arrival, source);
    for (int i = 0; i < k; ++i) e.append(detail::phi_plus(), {2 + 2 * i, 3 + 2 * i});
    const auto cz = cz_unitary(1);
    if (arrival.photon())
        for (int i = 0; i < k; ++i)
            if (binary_digit(arrival.bin, i, k)) {
                e.apply(cz, {detail::kStarL, 2 + 2 * i});
                e.apply(cz, {detail::kStarR, 3 + 2 * i});
            }
    int n = 0;
    for (int i = 0; i < k; ++i) n = 2 * n + detail::decode_pair(e, 2 + 2 * i, 3 + 2 * i, rng);
    MemoryRunResult res;
    res.decoded = n == 0 ? Arrival::none() : Arrival::in_bin(n);
    if (!res.decoded.photon()) return res;
    const int x_id = swap_lab_bases ? detail::kStarR : detail::kStarL;
    const int r_id = swap_lab_bases ? detail::kStarL : detail::kStarR;
    const auto xo = static_cast<int>(e.measure(x_id, basis_vectors(MeasBasis::x()), rng));
    const auto pr = basis_vectors(MeasBasis::rotated(delta));
    res.n_minus = xo;
    res.p_plus = e.distribution(r_id, pr)[0];
    const auto ro = static_cast<int>(e.measure(r_id, pr, rng));
    res.outcome = swap_lab_bases ? std::vector<int>{ro, xo} : std::vector<int>{xo, ro};
    return res;
}

/**
 * Unmodified protocol. Qubit ids: star L (0), star R (1), memory L digit i
 * (10 + i), memory R digit i (100 + i), pair i halves (1000 + 2i, 1001 + 2i).
 * The star copies the bin into its lab's memory (CNOTs onto digit-1 qubits),
 * each memory qubit applies CZ onto its half of the matching pair, the pairs
 * are decoded, then the star modes and the affected memory qubits are
 * measured in X, except the last affected R memory qubit, which is measured
 * in Rotated(delta). Unaffected memory qubits stay |0> and are traced out.
 *
 * Pair i only interacts with memory digit i, so it is brought in, hit by its
 * two CZs and decoded before pair i+1 is added; this reorders commuting
 * operations and keeps the register small.
 */
inline MemoryRunResult run_memory_unmodified(int n_bins, const Arrival &arrival, const SourceModel &source,
                                             double delta, std::uint64_t rng_seed) {
    check_arrival(arrival, n_bins);
    std::mt19937_64 rng(rng_seed);
    const int k = pairs_for_bins(n_bins);
    auto mem_l = [](int i) { return 10 + i; };
    auto mem_r = [](int i) { return 100 + i; };
    auto pair_l = [](int i) { return 1000 + 2 * i; };

    QubitEnsemble e = detail::star_ensemble(arrival, source);
    std::vector<int> mem_ids;
    for (int i = 0; i < k; ++i) mem_ids.push_back(mem_l(i));
    for (int i = 0; i < k; ++i) mem_ids.push_back(mem_r(i));
    e.append(basis_state(OccupationState(static_cast<std::size_t>(2 * k), 0), 2 * k, 1), mem_ids);

    const auto cx = cnot_fock_unitary(1);
    const auto cz = cz_unitary(1);
    if (arrival.photon())
        for (int i = 0; i < k; ++i)
            if (binary_digit(arrival.bin, i, k)) {
                e.apply(cx, {detail::kStarL, mem_l(i)});
                e.apply(cx, {detail::kStarR, mem_r(i)});
            }
    int n = 0;
    for (int i = 0; i < k; ++i) {
        e.append(detail::phi_plus(), {pair_l(i), pair_l(i) + 1});
        e.apply(cz, {mem_l(i), pair_l(i)});
        e.apply(cz, {mem_r(i), pair_l(i) + 1});
        n = 2 * n + detail::decode_pair(e, pair_l(i), pair_l(i) + 1, rng);
    }
    MemoryRunResult res;
    res.decoded = n == 0 ? Arrival::none() : Arrival::in_bin(n);
    if (!res.decoded.photon()) return res;

    std::vector<int> x_ids{detail::kStarL, detail::kStarR};
    for (int i = 0; i < k; ++i)
        if (binary_digit(n, i, k)) x_ids.push_back(mem_l(i));
    int last = -1;
    for (int i = 0; i < k; ++i)
        if (binary_digit(n, i, k)) {
            if (last >= 0) x_ids.push_back(last);
            last = mem_r(i);
        }
    const auto x = basis_vectors(MeasBasis::x());
    for (int q : x_ids) res.n_minus += static_cast<int>(e.measure(q, x, rng));
    const auto pr = basis_vectors(MeasBasis::rotated(delta));
    res.p_plus = e.distribution(last, pr)[0];
    res.outcome = {static_cast<int>(e.measure(last, pr, rng))};
    return res;
}

struct ResourceCount {
    int bell_pairs = 0;
    int memory_qubits = 0;
    /// Two-qubit gates in the encoding stage when every digit is 1.
    int encode_gates = 0;

    int ancilla_qubits() const { return 2 * bell_pairs + memory_qubits; }
};

inline ResourceCount resources_modified(int n_bins) {
    const int k = pairs_for_bins(n_bins);
    return {k, 0, 2 * k};
}

inline ResourceCount resources_unmodified(int n_bins) {
    const int k = pairs_for_bins(n_bins);
    return {k, 2 * k, 4 * k};
}

} // namespace qtel
