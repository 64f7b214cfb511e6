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


// Acceptance checks. Prints one PASS/FAIL line per criterion; with
// --criterion N only that criterion runs. Exit status is 0 when every
// selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "qtel/qtel.hpp"

using namespace qtel;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string num(double v, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<double> kGridPhases{0.0, 0.3, 1.0, 2.2, kPi};
const std::vector<double> kGridVisibilities{0.25, 0.5, 1.0};

// Hand-written single-photon table of the six-mode protocol.
std::vector<std::pair<Outcome, double>> six_mode_table(const SourceModel &s, double delta) {
    const double e = s.epsilon, cp = s.g * std::cos(s.phi + delta), cm = s.g * std::cos(s.phi - delta);
    return {{{1, 1, 0, 1, 0, 1}, e / 8 * (1 - cp)}, {{1, 0, 1, 0, 1, 1}, e / 8 * (1 - cp)},
            {{1, 1, 0, 0, 1, 1}, e / 8 * (1 + cp)}, {{1, 0, 1, 1, 0, 1}, e / 8 * (1 + cp)},
            {{0, 1, 0, 1, 0, 0}, e / 8 * (1 + cm)}, {{0, 0, 1, 0, 1, 0}, e / 8 * (1 + cm)},
            {{0, 1, 0, 0, 1, 0}, e / 8 * (1 - cm)}, {{0, 0, 1, 1, 0, 0}, e / 8 * (1 - cm)}};
}

double lookup(const OutcomeDistribution &d, const Outcome &o) {
    const auto it = d.find(o);
    return it == d.end() ? 0.0 : it->second;
}

Verdict six_mode_table_reproduction() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double phi : kGridPhases)
        for (double delta : kGridPhases)
            for (double g : kGridVisibilities) {
                const SourceModel s{0.1, g, phi};
                const auto d = cnot_distribution(s, {delta, 1.0, Variant::CnotSequence, false});
                for (const auto &[o, p] : six_mode_table(s, delta)) worst = std::max(worst, std::abs(lookup(d, o) - p));
            }
    const double t = seconds_since(t0);
    return {worst <= 1e-12 && t < 5.0,
            "max |p - table| = " + num(worst) + " (tol 1e-12), runtime " + num(t) + " s (limit 5 s)"};
}

Verdict cnot_saturates_qfi() {
    const double eps = 0.1;
    double dev_eps = 0.0, dev_qfi = 0.0;
    for (double phi : kGridPhases)
        for (double delta : kGridPhases) {
            const SourceModel s{eps, 1.0, phi};
            const auto model = cnot_model(eps, {delta, 1.0, Variant::CnotSequence, false});
            const double f = classical_fisher(model, {phi, 1.0}, {Parameter::Phi}).phiphi();
            const Eigen::MatrixXcd rho = stellar_block(s);
            const Eigen::MatrixXcd d = stellar_block_derivative(s, Parameter::Phi);
            const auto l = sld(rho, d);
            const double h = (rho * l.matrix * l.matrix).trace().real();
            dev_eps = std::max(dev_eps, std::abs(f - eps));
            dev_qfi = std::max(dev_qfi, std::abs(f - h));
        }
    return {dev_eps <= 1e-8 && dev_qfi <= 1e-8,
            "max |f - eps| = " + num(dev_eps) + ", max |f - h| = " + num(dev_qfi) + " (tol 1e-8)"};
}

Verdict linear_optics_gap() {
    const double eps = 0.1;
    double dev = 0.0;
    for (double phi : {0.0, 0.4, 1.3, 2.7})
        for (double delta : {0.0, 0.6})
            dev = std::max(dev, std::abs(classical_fisher(gottesman_model(eps, delta), {phi, 1.0}, {Parameter::Phi})
                                             .phiphi() -
                                         eps / 2));
    const auto search = linear_bound_search(1000, 20261016, eps);
    return {dev <= 1e-8 && search.max_fisher <= eps / 2 + 1e-6,
            "max |f - eps/2| = " + num(dev) + " (tol 1e-8), best of 1000 random circuits f = " +
                num(search.max_fisher, 10) + " (limit " + num(eps / 2 + 1e-6, 10) + ")"};
}

Eigen::Matrix2cd swap_basis(const Eigen::Matrix2cd &m) {
    Eigen::Matrix2cd p;
    p << 0, 1, 1, 0;
    return p * m * p;
}

Verdict sld_closed_forms() {
    double dev = 0.0, residual = 0.0;
    for (double g : {0.3, 0.7})
        for (double phi : {0.0, 1.0, 2.5}) {
            const SourceModel s{0.1, g, phi};
            const Eigen::MatrixXcd rho = single_photon_conditional(s);
            Eigen::Matrix2cd lp, lg;
            lp << 0.0, -std::polar(1.0, -phi), std::polar(1.0, phi), 0.0;
            lg << -g, std::polar(1.0, -phi), std::polar(1.0, phi), -g;
            const Eigen::Matrix2cd want_phi = swap_basis(kI * g * lp), want_g = swap_basis(lg / (1 - g * g));
            const Eigen::MatrixXcd dphi = single_photon_conditional_derivative(s, Parameter::Phi);
            const Eigen::MatrixXcd dg = single_photon_conditional_derivative(s, Parameter::G);
            const auto l_phi = sld(rho, dphi), l_g = sld(rho, dg);
            dev = std::max({dev, (l_phi.matrix - want_phi).cwiseAbs().maxCoeff(),
                            (l_g.matrix - want_g).cwiseAbs().maxCoeff()});
            residual = std::max({residual, sld_residual(rho, dphi, l_phi), sld_residual(rho, dg, l_g)});
        }
    return {dev <= 1e-10 && residual < 1e-10,
            "max |L - closed form| = " + num(dev) + " (tol 1e-10), max residual = " + num(residual) + " (tol 1e-10)"};
}

Verdict non_saturability() {
    const SourceModel s{0.1, 0.5, 0.8};
    const Eigen::MatrixXcd rho = single_photon_conditional(s);
    const auto l_phi = sld(rho, single_photon_conditional_derivative(s, Parameter::Phi));
    const auto l_g = sld(rho, single_photon_conditional_derivative(s, Parameter::G));
    const double weak = saturability_check(rho, l_phi, l_g);
    return {weak > 1e-8, "|Tr(rho [L_phi, L_g])| = " + num(weak) + " (needs > 1e-8); support commutator norm = " +
                             num(support_commutator_norm(rho, l_phi, l_g))};
}

Verdict heralding() {
    ExperimentPlan p;
    p.protocol = ProtocolId::Cnot;
    p.source = {0.1, 1.0, 0.7};
    p.windows = 100000;
    p.seed = 20261016;
    long exceptions = 0, photons = 0;
    for (const auto &r : run_experiment(p)) {
        const bool agree = r.record[0] == r.record[5];
        photons += r.arrival_bin > 0;
        if (agree != (r.arrival_bin > 0)) ++exceptions;
    }
    return {exceptions == 0, std::to_string(exceptions) + " exceptions over 100000 windows (" +
                                 std::to_string(photons) + " photon windows)"};
}

Verdict ancilla_loss() {
    const double eta = 0.6, eps = 0.1;
    const long m = 100000;
    ExperimentPlan p;
    p.protocol = ProtocolId::Cnot;
    p.source = {eps, 1.0, 0.7};
    p.eta = eta;
    p.windows = m;
    p.seed = 20261016;
    long n00 = 0, n11 = 0;
    for (const auto &r : run_experiment(p)) {
        n00 += r.record[0] == 0 && r.record[5] == 0;
        n11 += r.record[0] == 1 && r.record[5] == 1;
    }
    const double p00 = eta * eps / 2, p11 = eta * eps / 2 + (1 - eta) * (1 - eps);
    const double z00 = (n00 / double(m) - p00) / std::sqrt(p00 * (1 - p00) / m);
    const double z11 = (n11 / double(m) - p11) / std::sqrt(p11 * (1 - p11) / m);
    const double f = crb_report(p).f_bar;
    return {std::abs(z00) <= 3 && std::abs(z11) <= 3 && std::abs(f - eta * eps) <= 1e-8,
            "z(0_0 0_5) = " + num(z00) + ", z(1_0 1_5) = " + num(z11) + " (limit 3), |f - eta eps| = " +
                num(std::abs(f - eta * eps)) + " (tol 1e-8)"};
}

Verdict memory_protocols() {
    long failures = 0;
    for (int n : {3, 7, 15})
        for (int b = 0; b <= n; ++b) {
            const Arrival a = b ? Arrival::in_bin(b) : Arrival::none();
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                failures += !(decode_time_bin(encode_time_bin_modified(BellRegister::fresh(n), a), seed) == a);
                failures += !(run_memory_modified(n, a, {0.1, 0.9, 0.4}, 0.3, seed).decoded == a);
                failures += !(run_memory_unmodified(n, a, {0.1, 0.9, 0.4}, 0.3, seed).decoded == a);
            }
        }
    const auto transcript = encode_time_bin_modified(BellRegister::fresh(7), Arrival::in_bin(3)).transcript();
    double sign = 0.0;
    for (double g : {0.0, 0.5, 1.0})
        for (int b : {1, 3, 6, 7})
            for (std::uint64_t seed = 0; seed < 6; ++seed) {
                const SourceModel s{0.1, g, 1.1};
                const auto r = run_memory_unmodified(7, Arrival::in_bin(b), s, 0.4, seed);
                const double want = 0.5 * (1 + (r.n_minus % 2 ? -1.0 : 1.0) * g * std::cos(1.1 + 0.4));
                sign = std::max(sign, std::abs(r.p_plus - want));
            }
    const int mod = resources_modified(7).ancilla_qubits(), unmod = resources_unmodified(7).ancilla_qubits();
    const bool ok = failures == 0 && transcript == "|Φ+⟩|Φ−⟩|Φ−⟩" && sign <= 1e-12 && 2 * mod == unmod;
    return {ok, std::to_string(failures) + " round-trip failures, N=7 n=3 transcript " + transcript +
                    ", sign-rule deviation " + num(sign) + " (tol 1e-12), ancilla qubits " + std::to_string(mod) +
                    " vs " + std::to_string(unmod)};
}

Verdict end_to_end_estimation() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentPlan p;
    p.protocol = ProtocolId::Cnot;
    p.source = {0.1, 1.0, 0.7};
    p.windows = 100000;
    p.seed = 20261016;
    const auto single = mle_phase(run_experiment(p), p);
    const auto rep = repeat_estimation(p, 200);
    const double t = seconds_since(t0);
    const bool ok = single.error < 0.02 && rep.mse_over_crb >= 0.9 && rep.mse_over_crb <= 1.3 && t < 120.0;
    return {ok, "wrapped error " + num(single.error) + " (limit 0.02), MSE/CRB over 200 runs " +
                    num(rep.mse_over_crb) + " (range [0.9, 1.3]), runtime " + num(t) + " s (limit 120 s)"};
}

Verdict variant_equivalence() {
    double worst = 0.0;
    for (double phi : kGridPhases)
        for (double delta : kGridPhases)
            for (double g : kGridVisibilities)
                for (double eta : {1.0, 0.6}) {
                    const SourceModel s{0.1, g, phi};
                    const auto a = cnot_distribution(s, {delta, eta, Variant::CnotSequence, false});
                    const auto b = cnot_distribution(s, {delta, eta, Variant::ParityFeedForward, false});
                    for (const auto &[o, pa] : a) worst = std::max(worst, std::abs(pa - lookup(b, o)));
                    for (const auto &[o, pb] : b) worst = std::max(worst, std::abs(pb - lookup(a, o)));
                }
    return {worst <= 1e-12, "max |p_A - p_B| = " + num(worst) + " (tol 1e-12)"};
}

struct Criterion {
    const char *name;
    std::function<Verdict()> run;
};

} // namespace

int main(int argc, char **argv) {
    const std::vector<Criterion> criteria{
        {"six-mode outcome table", six_mode_table_reproduction},
        {"cnot protocol saturates the QFI", cnot_saturates_qfi},
        {"linear-optics baseline gap", linear_optics_gap},
        {"SLD closed forms", sld_closed_forms},
        {"non-commuting SLDs on the support", non_saturability},
        {"heralding", heralding},
        {"ancilla-loss model", ancilla_loss},
        {"memory protocols", memory_protocols},
        {"end-to-end estimation", end_to_end_estimation},
        {"variant equivalence", variant_equivalence},
    };
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 2;
        }
    }
    if (only < 0 || only > static_cast<int>(criteria.size())) {
        std::fprintf(stderr, "criterion must lie in [1, %zu]\n", criteria.size());
        return 2;
    }
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        Verdict v{false, ""};
        try {
            v = criteria[i].run();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    v.detail.c_str());
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
