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
 * Dense few-mode bosonic states over a truncated Fock space.
 *
 * Basis enumeration is row-major over modes with the least-significant mode
 * last: for modes (m_0, ..., m_{K-1}) at cutoff n_max the basis label
 * (n_0, ..., n_{K-1}) sits at index sum_k n_k (n_max+1)^(K-1-k). This order is
 * frozen; serialized states depend on it.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qtel/core.hpp"

namespace qtel {

/// Per-mode photon counts labelling one Fock basis vector.
using OccupationState = std::vector<int>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kLeakageTolerance = 1e-10;
inline constexpr double kSerializationCutoff = 1e-14;

/// Shape of a truncated multimode Fock space: mode count and per-mode cutoff.
class FockSpace {
  public:
    FockSpace(int mode_count, int n_max) : mode_count_(mode_count), n_max_(n_max) {
        if (mode_count < 1) throw InvalidArgument("FockSpace: mode_count must be >= 1");
        if (n_max < 1) throw InvalidArgument("FockSpace: n_max must be >= 1");
        dim_ = 1;
        for (int m = 0; m < mode_count; ++m) {
            if (dim_ > (std::size_t{1} << 40) / levels())
                throw InvalidArgument("FockSpace: dimension too large for a dense register");
            dim_ *= static_cast<std::size_t>(levels());
        }
    }

    int mode_count() const { return mode_count_; }
    int n_max() const { return n_max_; }
    int levels() const { return n_max_ + 1; }
    std::size_t dim() const { return dim_; }

    std::size_t stride(int mode) const {
        std::size_t s = 1;
        for (int m = mode_count_ - 1; m > mode; --m) s *= static_cast<std::size_t>(levels());
        return s;
    }

    int digit(std::size_t index, int mode) const {
        return static_cast<int>((index / stride(mode)) % static_cast<std::size_t>(levels()));
    }

    void check_occupation(const OccupationState &occ) const {
        if (static_cast<int>(occ.size()) != mode_count_)
            throw InvalidArgument("occupation has " + std::to_string(occ.size()) +
                                  " entries, register has " + std::to_string(mode_count_) +
                                  " modes");
        for (int n : occ)
            if (n < 0 || n > n_max_)
                throw InvalidArgument("occupation " + std::to_string(n) +
                                      " outside cutoff n_max=" + std::to_string(n_max_));
    }

    std::size_t index_of(const OccupationState &occ) const {
        check_occupation(occ);
        std::size_t idx = 0;
        for (int n : occ) idx = idx * static_cast<std::size_t>(levels()) + static_cast<std::size_t>(n);
        return idx;
    }

    OccupationState occupation_of(std::size_t index) const {
        OccupationState occ(static_cast<std::size_t>(mode_count_));
        for (int m = mode_count_ - 1; m >= 0; --m) {
            occ[static_cast<std::size_t>(m)] = static_cast<int>(index % static_cast<std::size_t>(levels()));
            index /= static_cast<std::size_t>(levels());
        }
        return occ;
    }

    void check_modes(const std::vector<int> &modes) const {
        if (modes.empty()) throw InvalidArgument("mode subset must be non-empty");
        std::vector<int> sorted = modes;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidArgument("mode subset contains duplicates");
        for (int m : modes)
            if (m < 0 || m >= mode_count_)
                throw InvalidArgument("mode index " + std::to_string(m) + " out of range");
    }

    friend bool operator==(const FockSpace &a, const FockSpace &b) {
        return a.mode_count_ == b.mode_count_ && a.n_max_ == b.n_max_;
    }

  private:
    int mode_count_;
    int n_max_;
    std::size_t dim_ = 1;
};

namespace detail {

/// Offsets (relative to a block base) of every local basis state of `modes`,
/// enumerated in the same row-major order as a FockSpace over those modes.
inline std::vector<std::size_t> local_offsets(const FockSpace &space, const std::vector<int> &modes) {
    const FockSpace local(static_cast<int>(modes.size()), space.n_max());
    std::vector<std::size_t> offsets(local.dim());
    for (std::size_t l = 0; l < local.dim(); ++l) {
        std::size_t off = 0;
        for (std::size_t k = 0; k < modes.size(); ++k)
            off += static_cast<std::size_t>(local.digit(l, static_cast<int>(k))) * space.stride(modes[k]);
        offsets[l] = off;
    }
    return offsets;
}

/// Indices whose digits on `modes` are all zero: one per block.
inline std::vector<std::size_t> block_bases(const FockSpace &space, const std::vector<int> &modes) {
    std::vector<std::size_t> bases;
    bases.reserve(space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i) {
        bool zero = true;
        for (int m : modes)
            if (space.digit(i, m) != 0) {
                zero = false;
                break;
            }
        if (zero) bases.push_back(i);
    }
    return bases;
}

/// Applies a local matrix on `modes` to every column of `data` in place.
inline void apply_local(const FockSpace &space, const std::vector<int> &modes,
                        const Eigen::MatrixXcd &local, Eigen::Ref<Eigen::MatrixXcd> data) {
    const auto offsets = local_offsets(space, modes);
    const auto bases = block_bases(space, modes);
    const auto ld = static_cast<Eigen::Index>(offsets.size());
    Eigen::VectorXcd buf(ld);
    for (Eigen::Index col = 0; col < data.cols(); ++col) {
        for (std::size_t base : bases) {
            for (Eigen::Index l = 0; l < ld; ++l)
                buf(l) = data(static_cast<Eigen::Index>(base + offsets[static_cast<std::size_t>(l)]), col);
            Eigen::VectorXcd out = local * buf;
            for (Eigen::Index l = 0; l < ld; ++l)
                data(static_cast<Eigen::Index>(base + offsets[static_cast<std::size_t>(l)]), col) = out(l);
        }
    }
}

inline std::size_t sample_index(const std::vector<double> &probs, std::mt19937_64 &rng) {
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    std::uniform_real_distribution<double> unif(0.0, total);
    const double u = unif(rng);
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] <= 0.0) continue;
        last_nonzero = k;
        acc += probs[k];
        if (u < acc) return k;
    }
    return last_nonzero;
}

} // namespace detail

/// Pure state over a truncated Fock space.
class StateVector {
  public:
    StateVector(FockSpace space, Eigen::VectorXcd amplitudes)
        : space_(space), amps_(std::move(amplitudes)) {
        if (static_cast<std::size_t>(amps_.size()) != space_.dim())
            throw InvalidArgument("StateVector: amplitude count does not match register dimension");
    }

    static StateVector zero(FockSpace space) {
        return StateVector(space, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dim())));
    }

    const FockSpace &space() const { return space_; }
    int mode_count() const { return space_.mode_count(); }
    int n_max() const { return space_.n_max(); }
    std::size_t dim() const { return space_.dim(); }
    const Eigen::VectorXcd &amplitudes() const { return amps_; }
    Eigen::VectorXcd &amplitudes() { return amps_; }

    cplx amplitude(const OccupationState &occ) const {
        return amps_(static_cast<Eigen::Index>(space_.index_of(occ)));
    }
    void set_amplitude(const OccupationState &occ, cplx value) {
        amps_(static_cast<Eigen::Index>(space_.index_of(occ))) = value;
    }

    double norm() const { return amps_.norm(); }

    StateVector normalized() const {
        const double n = norm();
        if (n == 0.0) throw NumericalError("cannot normalize the zero vector");
        return StateVector(space_, amps_ / n);
    }

  private:
    FockSpace space_;
    Eigen::VectorXcd amps_;
};

/// Mixed state (or a Hermitian operator sharing the indexing, e.g. a
/// derivative of one) over a truncated Fock space.
class DensityOperator {
  public:
    DensityOperator(FockSpace space, Eigen::MatrixXcd matrix) : space_(space), mat_(std::move(matrix)) {
        const auto d = static_cast<Eigen::Index>(space_.dim());
        if (mat_.rows() != d || mat_.cols() != d)
            throw InvalidArgument("DensityOperator: matrix shape does not match register dimension");
    }

    static DensityOperator from_pure(const StateVector &psi) {
        return DensityOperator(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint());
    }

    const FockSpace &space() const { return space_; }
    int mode_count() const { return space_.mode_count(); }
    int n_max() const { return space_.n_max(); }
    std::size_t dim() const { return space_.dim(); }
    const Eigen::MatrixXcd &matrix() const { return mat_; }
    Eigen::MatrixXcd &matrix() { return mat_; }

    double trace() const { return mat_.trace().real(); }

    double hermiticity_defect() const { return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff(); }

    /// Throws NumericalError unless Hermitian, unit trace and PSD.
    void validate(double herm_tol = 1e-12, double trace_tol = 1e-12, double eig_tol = 1e-10) const {
        if (hermiticity_defect() > herm_tol) throw NumericalError("density operator is not Hermitian");
        if (std::abs(trace() - 1.0) > trace_tol) throw NumericalError("density operator trace differs from 1");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -eig_tol)
            throw NumericalError("density operator has a negative eigenvalue");
    }

  private:
    FockSpace space_;
    Eigen::MatrixXcd mat_;
};

/// A gate acting on an ordered subset of modes. `matrix` lives on the local
/// truncated space of those modes (same enumeration as FockSpace). `domain`
/// flags the local basis states the gate is physically defined on; input
/// amplitude elsewhere is a leakage error.
struct ModeUnitary {
    std::vector<int> targets;
    int n_max = 2;
    Eigen::MatrixXcd matrix;
    std::vector<bool> domain;

    std::size_t local_dim() const { return static_cast<std::size_t>(matrix.rows()); }

    /// Same gate retargeted onto other modes.
    ModeUnitary on(std::vector<int> modes) const {
        if (modes.size() != targets.size())
            throw InvalidArgument("ModeUnitary::on: arity mismatch");
        ModeUnitary u = *this;
        u.targets = std::move(modes);
        return u;
    }

    double unitarity_defect() const {
        const auto d = matrix.rows();
        return (matrix * matrix.adjoint() - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
    }
};

namespace detail {

inline void check_gate(const FockSpace &space, const ModeUnitary &u) {
    space.check_modes(u.targets);
    if (u.n_max != space.n_max())
        throw InvalidArgument("gate built for n_max=" + std::to_string(u.n_max) +
                              " applied to register with n_max=" + std::to_string(space.n_max()));
    const FockSpace local(static_cast<int>(u.targets.size()), u.n_max);
    if (static_cast<std::size_t>(u.matrix.rows()) != local.dim() ||
        static_cast<std::size_t>(u.matrix.cols()) != local.dim())
        throw InvalidArgument("gate matrix does not match its local space");
    if (!u.domain.empty() && u.domain.size() != local.dim())
        throw InvalidArgument("gate domain mask does not match its local space");
}

/// Largest squared amplitude the state places on basis states outside the
/// gate's domain.
inline double leakage(const FockSpace &space, const ModeUnitary &u, const Eigen::MatrixXcd &data) {
    if (u.domain.empty()) return 0.0;
    const auto offsets = local_offsets(space, u.targets);
    const auto bases = block_bases(space, u.targets);
    double worst = 0.0;
    for (std::size_t l = 0; l < offsets.size(); ++l) {
        if (u.domain[l]) continue;
        for (std::size_t base : bases) {
            const auto row = static_cast<Eigen::Index>(base + offsets[l]);
            worst = std::max(worst, data.row(row).squaredNorm());
        }
    }
    return worst;
}

} // namespace detail

inline StateVector basis_state(const OccupationState &occupations, int mode_count, int n_max) {
    const FockSpace space(mode_count, n_max);
    auto psi = StateVector::zero(space);
    psi.set_amplitude(occupations, 1.0);
    return psi;
}

inline StateVector vacuum(int mode_count, int n_max) {
    return basis_state(OccupationState(static_cast<std::size_t>(mode_count), 0), mode_count, n_max);
}

inline StateVector apply_unitary(const StateVector &state, const ModeUnitary &u) {
    detail::check_gate(state.space(), u);
    Eigen::MatrixXcd data = state.amplitudes();
    const double leak = detail::leakage(state.space(), u, data);
    if (leak > kLeakageTolerance)
        throw LeakageError("gate input has squared amplitude " + std::to_string(leak) +
                           " outside the subspace the gate preserves");
    detail::apply_local(state.space(), u.targets, u.matrix, data);
    return StateVector(state.space(), data.col(0));
}

/// rho -> U rho U^dagger.
inline DensityOperator apply_unitary(const DensityOperator &rho, const ModeUnitary &u) {
    detail::check_gate(rho.space(), u);
    Eigen::MatrixXcd data = rho.matrix();
    const double leak = std::max(detail::leakage(rho.space(), u, data),
                                 detail::leakage(rho.space(), u, data.adjoint()));
    if (leak > kLeakageTolerance)
        throw LeakageError("gate input has weight outside the subspace the gate preserves");
    detail::apply_local(rho.space(), u.targets, u.matrix, data);
    Eigen::MatrixXcd tmp = data.adjoint();
    detail::apply_local(rho.space(), u.targets, u.matrix, tmp);
    return DensityOperator(rho.space(), tmp.adjoint());
}

/// Applies an arbitrary (not necessarily unitary) local operator, e.g. a
/// projector or Kraus operator. No normalization.
inline StateVector apply_operator(const StateVector &state, const std::vector<int> &modes,
                                  const Eigen::MatrixXcd &local) {
    state.space().check_modes(modes);
    const FockSpace lspace(static_cast<int>(modes.size()), state.n_max());
    if (static_cast<std::size_t>(local.rows()) != lspace.dim() || local.rows() != local.cols())
        throw InvalidArgument("local operator shape does not match the mode subset");
    Eigen::MatrixXcd data = state.amplitudes();
    detail::apply_local(state.space(), modes, local, data);
    return StateVector(state.space(), data.col(0));
}

/// Contracts `mode` with the bra <v| (v over that mode's levels) and removes
/// it from the register. Used to discard a qubit after it has been measured.
inline StateVector contract_mode(const StateVector &state, int mode, const Eigen::VectorXcd &v) {
    state.space().check_modes({mode});
    if (state.mode_count() < 2) throw InvalidArgument("contract_mode: cannot remove the last mode");
    const auto levels = static_cast<std::size_t>(state.n_max() + 1);
    if (static_cast<std::size_t>(v.size()) != levels) throw InvalidArgument("contract_mode: bra has wrong dimension");
    const FockSpace rest(state.mode_count() - 1, state.n_max());
    const std::size_t stride = state.space().stride(mode);
    const std::size_t block = stride * levels;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rest.dim()));
    for (std::size_t hi = 0; hi < state.dim() / block; ++hi)
        for (std::size_t d = 0; d < levels; ++d) {
            const cplx c = std::conj(v(static_cast<Eigen::Index>(d)));
            if (c == 0.0) continue;
            out.segment(static_cast<Eigen::Index>(hi * stride), static_cast<Eigen::Index>(stride)) +=
                c * state.amplitudes().segment(static_cast<Eigen::Index>(hi * block + d * stride),
                                               static_cast<Eigen::Index>(stride));
        }
    return StateVector(rest, out);
}

/// Tensor product with `a`'s modes first. Both registers must share n_max.
inline StateVector tensor(const StateVector &a, const StateVector &b) {
    if (a.n_max() != b.n_max()) throw InvalidArgument("tensor: registers have different cutoffs");
    const FockSpace space(a.mode_count() + b.mode_count(), a.n_max());
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(space.dim()));
    const auto db = static_cast<Eigen::Index>(b.dim());
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.dim()); ++i)
        amps.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
    return StateVector(space, amps);
}

inline DensityOperator tensor(const DensityOperator &a, const DensityOperator &b) {
    if (a.n_max() != b.n_max()) throw InvalidArgument("tensor: registers have different cutoffs");
    const FockSpace space(a.mode_count() + b.mode_count(), a.n_max());
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(space.dim()), static_cast<Eigen::Index>(space.dim()));
    const auto db = static_cast<Eigen::Index>(b.dim());
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.dim()); ++i)
        for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(a.dim()); ++j)
            m.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    return DensityOperator(space, m);
}

namespace detail {

inline OccupationState project_label(const FockSpace &space, std::size_t index, const std::vector<int> &modes) {
    OccupationState label;
    label.reserve(modes.size());
    for (int m : modes) label.push_back(space.digit(index, m));
    return label;
}

} // namespace detail

inline OutcomeDistribution number_measurement_distribution(const StateVector &state, const std::vector<int> &modes) {
    state.space().check_modes(modes);
    const double nrm2 = state.amplitudes().squaredNorm();
    if (nrm2 == 0.0) throw NumericalError("cannot measure the zero vector");
    OutcomeDistribution dist;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state.amplitudes()(static_cast<Eigen::Index>(i)));
        if (p == 0.0) continue;
        dist[detail::project_label(state.space(), i, modes)] += p / nrm2;
    }
    return dist;
}

inline OutcomeDistribution number_measurement_distribution(const DensityOperator &rho, const std::vector<int> &modes) {
    rho.space().check_modes(modes);
    const double tr = rho.trace();
    if (tr <= 0.0) throw NumericalError("cannot measure an operator with non-positive trace");
    OutcomeDistribution dist;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        const double p = rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        if (p == 0.0) continue;
        dist[detail::project_label(rho.space(), i, modes)] += p / tr;
    }
    return dist;
}

/// Projects onto a number-basis outcome of `modes` without renormalizing.
inline StateVector project_number(const StateVector &state, const std::vector<int> &modes,
                                  const OccupationState &outcome) {
    state.space().check_modes(modes);
    if (outcome.size() != modes.size()) throw InvalidArgument("outcome arity does not match mode subset");
    StateVector out = state;
    for (std::size_t i = 0; i < state.dim(); ++i)
        if (detail::project_label(state.space(), i, modes) != outcome)
            out.amplitudes()(static_cast<Eigen::Index>(i)) = 0.0;
    return out;
}

struct Collapse {
    OccupationState outcome;
    StateVector state;
};

/// Renormalized post-measurement state for a given number outcome.
inline StateVector collapse_to(const StateVector &state, const std::vector<int> &modes,
                               const OccupationState &outcome) {
    StateVector proj = project_number(state, modes, outcome);
    if (proj.amplitudes().squaredNorm() < 1e-300)
        throw NumericalError("requested projection has zero probability");
    return proj.normalized();
}

inline Collapse sample_and_collapse(const StateVector &state, const std::vector<int> &modes, std::mt19937_64 &rng) {
    const auto dist = number_measurement_distribution(state, modes);
    std::vector<double> probs;
    std::vector<OccupationState> labels;
    for (const auto &[label, p] : dist) {
        labels.push_back(label);
        probs.push_back(p);
    }
    const auto k = detail::sample_index(probs, rng);
    return {labels[k], collapse_to(state, modes, labels[k])};
}

inline Collapse sample_and_collapse(const StateVector &state, const std::vector<int> &modes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_and_collapse(state, modes, rng);
}

/// Outcome probabilities of a projective measurement on `modes` given its
/// local projectors.
inline std::vector<double> projective_distribution(const StateVector &state, const std::vector<int> &modes,
                                                   const std::vector<Eigen::MatrixXcd> &projectors) {
    const double nrm2 = state.amplitudes().squaredNorm();
    std::vector<double> probs;
    probs.reserve(projectors.size());
    for (const auto &p : projectors)
        probs.push_back(apply_operator(state, modes, p).amplitudes().squaredNorm() / nrm2);
    return probs;
}

struct ProjectiveResult {
    std::size_t outcome;
    StateVector state;
};

/// Samples a projective measurement and returns the renormalized branch.
/// Probabilities must sum to one; a shortfall means the state has weight
/// outside the subspace the projectors resolve.
inline ProjectiveResult measure_projective(const StateVector &state, const std::vector<int> &modes,
                                           const std::vector<Eigen::MatrixXcd> &projectors, std::mt19937_64 &rng) {
    const auto probs = projective_distribution(state, modes, projectors);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-10)
        throw NumericalError("projectors do not resolve the state (total probability " + std::to_string(total) + ")");
    const auto k = detail::sample_index(probs, rng);
    return {k, apply_operator(state, modes, projectors[k]).normalized()};
}

/// Partial trace keeping `keep` (in the given order).
inline DensityOperator partial_trace(const DensityOperator &rho, const std::vector<int> &keep) {
    const FockSpace &space = rho.space();
    space.check_modes(keep);
    std::vector<int> traced;
    for (int m = 0; m < space.mode_count(); ++m)
        if (std::find(keep.begin(), keep.end(), m) == keep.end()) traced.push_back(m);
    const FockSpace kept(static_cast<int>(keep.size()), space.n_max());
    if (traced.empty()) {
        // Pure reordering.
        Eigen::MatrixXcd out(static_cast<Eigen::Index>(kept.dim()), static_cast<Eigen::Index>(kept.dim()));
        const auto off = detail::local_offsets(space, keep);
        for (std::size_t a = 0; a < kept.dim(); ++a)
            for (std::size_t b = 0; b < kept.dim(); ++b)
                out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                    rho.matrix()(static_cast<Eigen::Index>(off[a]), static_cast<Eigen::Index>(off[b]));
        return DensityOperator(kept, out);
    }
    const auto keep_off = detail::local_offsets(space, keep);
    const auto trace_off = detail::local_offsets(space, traced);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kept.dim()),
                                                  static_cast<Eigen::Index>(kept.dim()));
    for (std::size_t a = 0; a < kept.dim(); ++a)
        for (std::size_t b = 0; b < kept.dim(); ++b) {
            cplx acc = 0.0;
            for (std::size_t t : trace_off)
                acc += rho.matrix()(static_cast<Eigen::Index>(keep_off[a] + t),
                                    static_cast<Eigen::Index>(keep_off[b] + t));
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
        }
    return DensityOperator(kept, out);
}

// ---------------------------------------------------------------------------
// Plain-text serialization.
//
//   <mode_count> <n_max>
//   <n_0>,<n_1>,...,<n_{K-1}> <re> <im>
//   ...
//
// One line per amplitude with |a| >= 1e-14, in enumeration order, 17
// significant digits.

inline void write_state(std::ostream &os, const StateVector &state) {
    os << state.mode_count() << ' ' << state.n_max() << '\n';
    const auto old_prec = os.precision(17);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const cplx a = state.amplitudes()(static_cast<Eigen::Index>(i));
        if (std::abs(a) < kSerializationCutoff) continue;
        const auto occ = state.space().occupation_of(i);
        for (std::size_t k = 0; k < occ.size(); ++k) os << (k ? "," : "") << occ[k];
        os << ' ' << a.real() << ' ' << a.imag() << '\n';
    }
    os.precision(old_prec);
}

inline std::string to_text(const StateVector &state) {
    std::ostringstream os;
    write_state(os, state);
    return os.str();
}

inline StateVector read_state(std::istream &is) {
    int modes = 0;
    int n_max = 0;
    if (!(is >> modes >> n_max)) throw InvalidArgument("state text: missing header");
    const FockSpace space(modes, n_max);
    auto psi = StateVector::zero(space);
    std::string tuple;
    while (is >> tuple) {
        std::string re_s, im_s;
        if (!(is >> re_s >> im_s)) throw InvalidArgument("state text: truncated amplitude line");
        OccupationState occ;
        std::stringstream ts(tuple);
        std::string field;
        while (std::getline(ts, field, ',')) {
            try {
                occ.push_back(std::stoi(field));
            } catch (const std::exception &) {
                throw InvalidArgument("state text: bad occupation '" + tuple + "'");
            }
        }
        double re = 0.0;
        double im = 0.0;
        try {
            re = std::stod(re_s);
            im = std::stod(im_s);
        } catch (const std::exception &) {
            throw InvalidArgument("state text: bad amplitude");
        }
        psi.set_amplitude(occ, cplx(re, im));
    }
    return psi;
}

inline StateVector from_text(const std::string &text) {
    std::istringstream is(text);
    return read_state(is);
}

} // namespace qtel
