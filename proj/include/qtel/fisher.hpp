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
 * Classical Fisher information of outcome models and quantum Fisher
 * information through symmetric logarithmic derivatives.
 *
 * Matrices are 2x2 over the parameter order (phi, g). Requests restricted to
 * a parameter subset leave the other rows and columns zero.
 */

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qtel/core.hpp"
#include "qtel/fock.hpp"
#include "qtel/sources.hpp"

namespace qtel {

struct ParamPoint {
    double phi = 0.0;
    double g = 1.0;

    double get(Parameter p) const { return p == Parameter::Phi ? phi : g; }
    ParamPoint shifted(Parameter p, double h) const {
        ParamPoint q = *this;
        (p == Parameter::Phi ? q.phi : q.g) += h;
        return q;
    }
};

/// 2x2 real symmetric information matrix over (phi, g).
struct FisherMatrix {
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();

    double operator()(Parameter a, Parameter b) const { return m(static_cast<int>(a), static_cast<int>(b)); }
    double phiphi() const { return m(0, 0); }
    double gg() const { return m(1, 1); }
    double phig() const { return m(0, 1); }

    FisherMatrix operator*(double s) const { return {m * s}; }
    FisherMatrix operator+(const FisherMatrix &o) const { return {m + o.m}; }
    double min_eigenvalue() const { return Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(m).eigenvalues()(0); }
};

/// A parameterized family of distributions over a fixed, declared outcome set.
class OutcomeModel {
  public:
    using Fn = std::function<std::vector<double>(const ParamPoint &)>;

    OutcomeModel(std::vector<Outcome> outcomes, Fn fn) : outcomes_(std::move(outcomes)), fn_(std::move(fn)) {}

    const std::vector<Outcome> &outcomes() const { return outcomes_; }
    std::size_t size() const { return outcomes_.size(); }

    /// Probabilities in declared outcome order; throws if not normalized.
    std::vector<double> probabilities(const ParamPoint &at) const {
        auto p = fn_(at);
        if (p.size() != outcomes_.size())
            throw NumericalError("outcome model returned " + std::to_string(p.size()) + " probabilities for " +
                                 std::to_string(outcomes_.size()) + " outcomes");
        double sum = 0.0;
        for (double v : p) sum += v;
        if (std::abs(sum - 1.0) > 1e-10)
            throw NumericalError("outcome model is not normalized (sum " + std::to_string(sum) + ")");
        return p;
    }

    OutcomeDistribution distribution(const ParamPoint &at) const {
        const auto p = probabilities(at);
        OutcomeDistribution d;
        for (std::size_t k = 0; k < p.size(); ++k) d[outcomes_[k]] += p[k];
        return d;
    }

  private:
    std::vector<Outcome> outcomes_;
    Fn fn_;
};

struct FisherOptions {
    double step = 1e-5;
    double curvature_step = 1e-3;
    double zero_probability = 1e-12;
    double zero_derivative = 1e-8;
    /// g-derivatives are refused at or above this visibility.
    double g_ceiling = 1.0 - 1e-6;
};

namespace detail {

inline std::vector<double> richardson_derivative(const OutcomeModel &model, const ParamPoint &at, Parameter p,
                                                 double h) {
    auto central = [&](double step) {
        const auto plus = model.probabilities(at.shifted(p, step));
        const auto minus = model.probabilities(at.shifted(p, -step));
        std::vector<double> d(plus.size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = (plus[k] - minus[k]) / (2.0 * step);
        return d;
    };
    const auto coarse = central(h);
    const auto fine = central(h / 2.0);
    std::vector<double> d(coarse.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = (4.0 * fine[k] - coarse[k]) / 3.0;
    return d;
}

/// Second derivative (mixed when a != b) of one outcome's probability.
inline double richardson_second(const OutcomeModel &model, const ParamPoint &at, Parameter a, Parameter b,
                                std::size_t k, double h) {
    auto second = [&](double s) {
        if (a == b) {
            const double pp = model.probabilities(at.shifted(a, s))[k];
            const double p0 = model.probabilities(at)[k];
            const double pm = model.probabilities(at.shifted(a, -s))[k];
            return (pp - 2.0 * p0 + pm) / (s * s);
        }
        const double ppp = model.probabilities(at.shifted(a, s).shifted(b, s))[k];
        const double ppm = model.probabilities(at.shifted(a, s).shifted(b, -s))[k];
        const double pmp = model.probabilities(at.shifted(a, -s).shifted(b, s))[k];
        const double pmm = model.probabilities(at.shifted(a, -s).shifted(b, -s))[k];
        return (ppp - ppm - pmp + pmm) / (4.0 * s * s);
    };
    return (4.0 * second(h / 2.0) - second(h)) / 3.0;
}

} // namespace detail

/**
 * Classical Fisher information f = sum_k (grad p_k)(grad p_k)^T / p_k by
 * central differences with one Richardson level.
 *
 * Outcomes with p_k below `zero_probability` must have a vanishing gradient;
 * they contribute the continuous limit 2 * Hessian(p_k) (the quadratic-zero
 * limit of (grad p)^2 / p), which keeps f continuous across interference
 * extrema. A non-vanishing gradient at a zero is a FisherDivergence.
 */
inline FisherMatrix classical_fisher(const OutcomeModel &model, const ParamPoint &at,
                                     const std::vector<Parameter> &wrt = {Parameter::Phi, Parameter::G},
                                     const FisherOptions &opt = {}) {
    for (Parameter p : wrt)
        if (p == Parameter::G && at.g >= opt.g_ceiling)
            throw FisherDivergence("g-derivatives are undefined at g >= 1 - 1e-6 (L_g diverges)");
    const auto probs = model.probabilities(at);
    for (double p : probs)
        if (p < -1e-12) throw NumericalError("outcome model produced a negative probability");

    std::vector<std::vector<double>> grads;
    for (Parameter p : wrt) {
        double h = opt.step;
        if (p == Parameter::G) h = std::min(h, (1.0 - at.g) / 2.0);
        grads.push_back(detail::richardson_derivative(model, at, p, h));
    }

    FisherMatrix f;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] >= opt.zero_probability) {
            for (std::size_t a = 0; a < wrt.size(); ++a)
                for (std::size_t b = 0; b < wrt.size(); ++b)
                    f.m(static_cast<int>(wrt[a]), static_cast<int>(wrt[b])) +=
                        grads[a][k] * grads[b][k] / probs[k];
            continue;
        }
        for (std::size_t a = 0; a < wrt.size(); ++a)
            if (std::abs(grads[a][k]) > opt.zero_derivative)
                throw FisherDivergence("outcome with vanishing probability has non-vanishing derivative wrt " +
                                       std::string(to_string(wrt[a])));
        Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
        for (std::size_t a = 0; a < wrt.size(); ++a)
            for (std::size_t b = a; b < wrt.size(); ++b) {
                double h = opt.curvature_step;
                if (wrt[a] == Parameter::G || wrt[b] == Parameter::G) h = std::min(h, (1.0 - at.g) / 2.0);
                const double v = detail::richardson_second(model, at, wrt[a], wrt[b], k, h);
                hess(static_cast<int>(wrt[a]), static_cast<int>(wrt[b])) = v;
                hess(static_cast<int>(wrt[b]), static_cast<int>(wrt[a])) = v;
            }
        if (wrt.size() > 1 && std::abs(hess.determinant()) > 1e-8 * std::max(1.0, hess.squaredNorm()))
            throw FisherDivergence("zero-probability outcome with full-rank curvature: limit is direction dependent");
        f.m += 2.0 * hess;
    }
    return f;
}

// ---------------------------------------------------------------------------
// Quantum Fisher information.

inline constexpr double kSldKernelCutoff = 1e-12;

/// Symmetric logarithmic derivative on the space rho acts on.
struct SldOperator {
    Eigen::MatrixXcd matrix;
};

/**
 * Solves (L rho + rho L)/2 = drho in the eigenbasis of rho:
 * L_mn = 2 <m|drho|n> / (lambda_m + lambda_n), skipping kernel pairs
 * (lambda_m + lambda_n < 1e-12). Throws FisherDivergence if drho has weight on
 * a skipped pair, where no SLD exists.
 */
inline SldOperator sld(const Eigen::MatrixXcd &rho, const Eigen::MatrixXcd &drho, double kernel_tol = 1e-10) {
    if (rho.rows() != rho.cols() || drho.rows() != rho.rows() || drho.cols() != rho.cols())
        throw InvalidArgument("sld: rho and drho must be square and of equal shape");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw InvalidArgument("sld: rho is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const Eigen::VectorXd lam = es.eigenvalues();
    if (lam.minCoeff() < -1e-10) throw InvalidArgument("sld: rho is not positive semidefinite");
    const Eigen::MatrixXcd &v = es.eigenvectors();
    const Eigen::MatrixXcd d = v.adjoint() * drho * v;
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (Eigen::Index m = 0; m < rho.rows(); ++m)
        for (Eigen::Index n = 0; n < rho.cols(); ++n) {
            const double s = lam(m) + lam(n);
            if (s < kSldKernelCutoff) {
                if (std::abs(d(m, n)) > kernel_tol)
                    throw FisherDivergence("sld: derivative has support on the kernel of rho");
                continue;
            }
            l(m, n) = 2.0 * d(m, n) / s;
        }
    return {v * l * v.adjoint()};
}

inline double sld_residual(const Eigen::MatrixXcd &rho, const Eigen::MatrixXcd &drho, const SldOperator &l) {
    return ((l.matrix * rho + rho * l.matrix) / 2.0 - drho).norm();
}

/// h_ij = Tr[rho (L_i L_j + L_j L_i)/2].
inline FisherMatrix qfi_matrix(const Eigen::MatrixXcd &rho, const Eigen::MatrixXcd &drho_phi,
                               const Eigen::MatrixXcd &drho_g) {
    const SldOperator ls[2] = {sld(rho, drho_phi), sld(rho, drho_g)};
    FisherMatrix h;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Eigen::MatrixXcd sym = (ls[i].matrix * ls[j].matrix + ls[j].matrix * ls[i].matrix) / 2.0;
            h.m(i, j) = (rho * sym).trace().real();
        }
    return h;
}

/// QFI for phi alone; usable at g = 1 where the g-SLD does not exist.
inline double qfi_phi(const Eigen::MatrixXcd &rho, const Eigen::MatrixXcd &drho_phi) {
    const auto l = sld(rho, drho_phi);
    return (rho * l.matrix * l.matrix).trace().real();
}

/// Weak-commutativity violation |Tr(rho [L_phi, L_g])|. Values above 1e-8
/// mean the two-parameter QFI bound is not jointly attainable.
inline double saturability_check(const Eigen::MatrixXcd &rho, const SldOperator &l_phi, const SldOperator &l_g) {
    const Eigen::MatrixXcd comm = l_phi.matrix * l_g.matrix - l_g.matrix * l_phi.matrix;
    return std::abs((rho * comm).trace());
}

/// Frobenius norm of [L_phi, L_g] compressed onto the support of rho.
inline double support_commutator_norm(const Eigen::MatrixXcd &rho, const SldOperator &l_phi, const SldOperator &l_g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (Eigen::Index k = 0; k < rho.rows(); ++k)
        if (es.eigenvalues()(k) > kSldKernelCutoff) proj += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    const Eigen::MatrixXcd comm = l_phi.matrix * l_g.matrix - l_g.matrix * l_phi.matrix;
    return (proj * comm * proj).norm();
}

/// QFI of the first-order stellar state per observation window (scales
/// with epsilon). At g >= 1 - 1e-6 only the phi entry is filled.
inline FisherMatrix stellar_qfi(const SourceModel &s) {
    const Eigen::MatrixXcd rho = stellar_block(s);
    const Eigen::MatrixXcd dphi = stellar_block_derivative(s, Parameter::Phi);
    if (s.g >= 1.0 - 1e-6) {
        FisherMatrix h;
        h.m(0, 0) = qfi_phi(rho, dphi);
        return h;
    }
    return qfi_matrix(rho, dphi, stellar_block_derivative(s, Parameter::G));
}

} // namespace qtel
