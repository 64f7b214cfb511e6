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
 * Subcommands of the qtel tool. Each returns a process exit code:
 * 0 success, 2 configuration error, 3 numerical invariant violation.
 */

#pragma once

#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "qtel/cli/config.hpp"
#include "qtel/cli/output.hpp"
#include "qtel/estimation.hpp"
#include "qtel/protocols/analytic.hpp"

namespace qtel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

namespace detail {

inline void require(bool ok, const std::string &what) {
    if (!ok) throw NumericalError("invariant violated: " + what);
}

inline std::string sign_label(int o) { return o == 0 ? "+" : "-"; }

inline Cell optional_cell(const std::optional<double> &v) { return v ? Cell{*v} : Cell{}; }

struct ProbRow {
    std::string label;
    double p;
    std::optional<double> reference;
};

inline std::vector<ProbRow> cnot_rows(const RunConfig &c) {
    const auto src = c.source();
    const auto cfg = c.protocol_config();
    std::vector<ProbRow> rows;
    for (const auto &[o, p] : cnot_distribution(src, cfg)) {
        std::optional<double> ref;
        if (c.eta == 1.0) ref = analytic::cnot_record(o, src, cfg.delta);
        rows.push_back({occupation_label(o), p, ref});
    }
    return rows;
}

inline std::vector<ProbRow> direct_rows(const RunConfig &c) {
    const auto src = c.source();
    std::vector<ProbRow> rows;
    for (const auto &[o, p] : direct_distribution(src, c.delta[0], c.swap_lab_bases)) {
        std::optional<double> ref;
        if (!c.swap_lab_bases) ref = analytic::direct_outcome(o[0], o[1], src, c.delta[0]);
        rows.push_back({sign_label(o[0]) + " " + sign_label(o[1]) + "_delta", p, ref});
    }
    return rows;
}

inline std::vector<ProbRow> gottesman_rows(const RunConfig &c) {
    std::vector<ProbRow> rows;
    for (const auto &[o, p] : gottesman_povm(c.delta[0]).distribution(stellar_block(c.source())))
        rows.push_back({occupation_label(o), p, std::nullopt});
    return rows;
}

/// Exact conditional probabilities from the register simulation: the X
/// result of lab L is uniform, and the run reports the rotated-basis
/// probability given the record so far.
inline std::vector<ProbRow> memory_modified_rows(const RunConfig &c) {
    const auto src = c.source();
    const Arrival a = Arrival::in_bin(c.arrival > 0 ? c.arrival : 1);
    std::vector<ProbRow> rows;
    for (int xo : {0, 1}) {
        std::optional<MemoryRunResult> hit;
        for (std::uint64_t s = 0; s < 256 && !hit; ++s) {
            auto r = run_memory_modified(c.n_bins, a, src, c.delta[0], derive_seed(c.seed, s), c.swap_lab_bases);
            const int x = c.swap_lab_bases ? r.outcome[1] : r.outcome[0];
            if (x == xo) hit = r;
        }
        require(hit.has_value(), "memory run never produced X outcome " + sign_label(xo));
        for (int ro : {0, 1}) {
            const double p = 0.5 * (ro == 0 ? hit->p_plus : 1.0 - hit->p_plus);
            const int l = c.swap_lab_bases ? ro : xo, r = c.swap_lab_bases ? xo : ro;
            std::optional<double> ref;
            if (!c.swap_lab_bases) ref = analytic::direct_outcome(l, r, src, c.delta[0]);
            rows.push_back({sign_label(l) + " " + sign_label(r) + "_delta", p, ref});
        }
    }
    return rows;
}

inline std::vector<ProbRow> memory_unmodified_rows(const RunConfig &c) {
    const auto src = c.source();
    const Arrival a = Arrival::in_bin(c.arrival > 0 ? c.arrival : 1);
    std::vector<ProbRow> rows;
    for (int parity : {0, 1}) {
        std::optional<MemoryRunResult> hit;
        for (std::uint64_t s = 0; s < 256 && !hit; ++s) {
            auto r = run_memory_unmodified(c.n_bins, a, src, c.delta[0], derive_seed(c.seed, s));
            if (r.n_minus % 2 == parity) hit = r;
        }
        require(hit.has_value(), "memory run never produced n_minus parity " + std::to_string(parity));
        const double ref = analytic::memory_unmodified_plus(parity, src, c.delta[0]);
        const std::string tag = parity == 0 ? "n_minus_even " : "n_minus_odd ";
        rows.push_back({tag + "+_delta", hit->p_plus, ref});
        rows.push_back({tag + "-_delta", 1.0 - hit->p_plus, 1.0 - ref});
    }
    return rows;
}

} // namespace detail

/// Outcome table: (label, probability, analytic_reference_probability, abs_diff).
inline Table probs_table(const RunConfig &c) {
    c.validate_plan();
    std::vector<detail::ProbRow> rows;
    switch (c.protocol) {
    case ProtocolId::Cnot:
        rows = detail::cnot_rows(c);
        break;
    case ProtocolId::Direct:
        rows = detail::direct_rows(c);
        break;
    case ProtocolId::Gottesman:
        rows = detail::gottesman_rows(c);
        break;
    case ProtocolId::MemoryModified:
        rows = detail::memory_modified_rows(c);
        break;
    case ProtocolId::MemoryUnmodified:
        rows = detail::memory_unmodified_rows(c);
        break;
    }
    Table t{{"label", "probability", "analytic_reference_probability", "abs_diff"}, {}};
    double total = 0.0;
    for (const auto &r : rows) {
        total += r.p;
        std::optional<double> diff;
        if (r.reference) {
            diff = std::abs(r.p - *r.reference);
            detail::require(*diff < 1e-10, "'" + r.label + "' departs from its analytic reference");
        }
        t.add({r.label, r.p, detail::optional_cell(r.reference), detail::optional_cell(diff)});
    }
    // The unmodified table holds two conditional distributions.
    const double expected = c.protocol == ProtocolId::MemoryUnmodified ? 2.0 : 1.0;
    detail::require(std::abs(total - expected) < 1e-10, "probabilities do not sum to one");
    return t;
}

/// Fisher sweep over fisher_phi x fisher_g x delta.
inline Table fisher_table(const RunConfig &c) {
    c.validate_plan();
    Table t{{"phi", "g", "delta", "f_phiphi", "f_gg", "f_phig", "h_phiphi", "h_gg", "h_phig", "saturability"}, {}};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double ew = c.epsilon * c.n_bins;
    for (double phi : c.fisher_phi)
        for (double g : c.fisher_g)
            for (std::size_t s = 0; s < c.delta.size(); ++s) {
                const SourceModel src{ew, g, phi};
                const auto model = protocol_model(c.protocol, ew, c.protocol_config(s));
                const bool edge = g >= 1.0 - 1e-6;
                const auto f = edge ? classical_fisher(model, {phi, g}, {Parameter::Phi})
                                    : classical_fisher(model, {phi, g});
                const auto h = stellar_qfi(src);
                double sat = nan;
                if (!edge && ew > 0.0) {
                    const Eigen::MatrixXcd rho = stellar_block(src);
                    const auto lp = sld(rho, stellar_block_derivative(src, Parameter::Phi));
                    const auto lg = sld(rho, stellar_block_derivative(src, Parameter::G));
                    sat = saturability_check(rho, lp, lg);
                }
                detail::require(f.phiphi() <= h.phiphi() + 1e-8, "classical Fisher exceeds the QFI");
                t.add({phi, g, c.delta[s], f.phiphi(), edge ? nan : f.gg(), edge ? nan : f.phig(), h.phiphi(),
                       edge ? nan : h.gg(), edge ? nan : h.phig(), sat});
            }
    return t;
}

inline nlohmann::ordered_json trace_line(const WindowRecord &r) {
    return {{"window", r.window},         {"arrival_bin", r.arrival_bin}, {"herald", to_string(r.herald)},
            {"record", r.record},         {"decoded_bin", r.decoded_bin}, {"seed", r.seed}};
}

struct SimulateResult {
    Table summary;
    std::vector<WindowRecord> records;
};

inline SimulateResult simulate(const RunConfig &c) {
    c.validate_plan();
    const auto plan = c.plan();
    auto records = run_experiment(plan);
    const auto r = mle_phase(records, plan);
    detail::require(r.n_heralded + r.n_vacuum + r.n_invalid == plan.windows, "window counts do not add up");
    const auto crb = crb_report(plan);
    double mse = r.empirical_mse;
    if (c.repetitions > 1) mse = repeat_estimation(plan, c.repetitions).mse;
    Table t{{"protocol", "epsilon", "g", "phi", "windows", "seed", "repetitions", "phi_hat", "error",
             "empirical_mse", "crb", "mse_over_crb", "f_bar", "f_bar_blind", "n_heralded", "n_vacuum", "n_invalid",
             "ambiguous"},
            {}};
    t.add({std::string(to_string(c.protocol)), c.epsilon, c.g, c.phi, static_cast<std::int64_t>(c.windows),
           std::to_string(c.seed), static_cast<std::int64_t>(c.repetitions), r.phi_hat, r.error, mse, r.crb,
           mse / r.crb, crb.f_bar, crb.f_bar_blind, r.n_heralded, r.n_vacuum, r.n_invalid, r.ambiguous});
    return {std::move(t), std::move(records)};
}

struct MemoryDemo {
    Table transcript;
    Table resources;
    std::string summary;
};

inline MemoryDemo memory_demo(const RunConfig &c) {
    c.validate();
    const int n_bins = c.n_bins;
    std::vector<Arrival> arrivals;
    if (c.arrival > 0) {
        arrivals.push_back(Arrival::in_bin(c.arrival));
    } else {
        arrivals.push_back(Arrival::none());
        for (int n = 1; n <= n_bins; ++n) arrivals.push_back(Arrival::in_bin(n));
    }
    MemoryDemo d;
    d.transcript.columns = {"bin", "pair_states", "decoded_bin", "unmodified_decoded_bin", "note"};
    const auto src = c.source();
    for (const auto &a : arrivals) {
        const auto reg = encode_time_bin_modified(BellRegister::fresh(n_bins), a);
        const auto seed = derive_seed(c.seed, static_cast<std::uint64_t>(a.bin));
        const Arrival dec = decode_time_bin(reg, seed);
        const Arrival full = run_memory_modified(n_bins, a, src, c.delta[0], seed).decoded;
        const Arrival unmod = run_memory_unmodified(n_bins, a, src, c.delta[0], seed).decoded;
        detail::require(dec == a && full == a && unmod == a, "time-bin round trip failed for bin " +
                                                                 std::to_string(a.bin));
        const std::string bin = a.photon() ? std::to_string(a.bin) : "none";
        const std::string decoded = dec.photon() ? std::to_string(dec.bin) : "none";
        const std::string decoded_u = unmod.photon() ? std::to_string(unmod.bin) : "none";
        d.transcript.add({bin, reg.transcript(), decoded, decoded_u, a.photon() ? "" : "ancilla unchanged"});
    }
    const auto m = resources_modified(n_bins), u = resources_unmodified(n_bins);
    detail::require(2 * m.ancilla_qubits() == u.ancilla_qubits(), "modified protocol does not halve the ancillas");
    d.resources.columns = {"protocol", "bell_pairs", "memory_qubits", "ancilla_qubits", "encode_gates"};
    d.resources.add({std::string("modified"), std::int64_t{m.bell_pairs}, std::int64_t{m.memory_qubits},
                     std::int64_t{m.ancilla_qubits()}, std::int64_t{m.encode_gates}});
    d.resources.add({std::string("unmodified"), std::int64_t{u.bell_pairs}, std::int64_t{u.memory_qubits},
                     std::int64_t{u.ancilla_qubits()}, std::int64_t{u.encode_gates}});
    d.summary = "N=" + std::to_string(n_bins) + ": " + std::to_string(m.bell_pairs) + " Bell pairs (modified) vs " +
                std::to_string(2 * u.bell_pairs) + " pair qubits + " + std::to_string(u.memory_qubits) +
                " memory qubits (unmodified); ancilla qubits " + std::to_string(m.ancilla_qubits()) + " vs " +
                std::to_string(u.ancilla_qubits());
    return d;
}

struct Check {
    std::string name;
    double value;
    double tolerance;

    bool pass() const { return value <= tolerance; }
};

/// The invariant suite behind `qtel validate`; each value is a deviation
/// that must not exceed its tolerance.
inline std::vector<Check> invariant_checks(const RunConfig &c) {
    c.validate();
    std::vector<Check> out;
    const std::vector<double> grid{0.0, 0.3, 1.0, 2.2, kPi};
    const std::vector<double> gs{0.25, 0.5, 1.0};

    double unitary = 0.0;
    for (const auto &u : {beam_splitter_unitary(2), phase_shift_unitary(0.7, 2), cz_unitary(2), z_unitary(2)})
        unitary = std::max(unitary, u.unitarity_defect());
    out.push_back({"gate_unitarity", unitary, 1e-12});

    double table = 0.0, variants = 0.0, completeness = 0.0;
    for (double phi : grid)
        for (double delta : grid)
            for (double g : gs) {
                const SourceModel s{c.epsilon, g, phi};
                const ProtocolConfig a{delta, 1.0, Variant::CnotSequence, false};
                const ProtocolConfig b{delta, 1.0, Variant::ParityFeedForward, false};
                const auto da = cnot_distribution(s, a), db = cnot_distribution(s, b);
                for (const auto &[o, p] : da) {
                    if (const auto ref = analytic::cnot_record(o, s, delta)) table = std::max(table, std::abs(p - *ref));
                    const auto it = db.find(o);
                    variants = std::max(variants, std::abs(p - (it == db.end() ? 0.0 : it->second)));
                }
                for (const auto &[o, p] : db)
                    if (!da.count(o)) variants = std::max(variants, p);
                completeness = std::max(completeness, std::abs(total_probability(da) - 1.0));
            }
    out.push_back({"cnot_analytic_table", table, 1e-12});
    out.push_back({"variant_equivalence", variants, 1e-12});
    out.push_back({"cnot_normalization", completeness, 1e-12});

    double herald = 0.0;
    for (double phi : {0.0, 1.2})
        for (const auto v : {Variant::CnotSequence, Variant::ParityFeedForward}) {
            const ProtocolConfig cfg{0.4, 1.0, v, false};
            for (const auto &[o, p] : cnot_distribution({1.0, 1.0, phi}, cfg))
                if (o[0] != o[5]) herald += p;
            for (const auto &[o, p] : cnot_distribution({0.0, 1.0, phi}, cfg))
                if (o[0] == o[5]) herald += p;
        }
    out.push_back({"herald_soundness", herald, 1e-12});

    double povm = 0.0;
    for (const auto &e : {cnot_povm({0.4, 0.6, Variant::CnotSequence, false}), gottesman_povm(0.4), direct_povm(0.4)})
        povm = std::max(povm, (e.total() - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff());
    out.push_back({"povm_completeness", povm, 1e-12});

    const double eps = c.epsilon > 0.0 ? c.epsilon : 0.1;
    double f_cnot = 0.0, f_gott = 0.0, f_qfi = 0.0;
    for (double phi : {0.2, 1.1, 2.6}) {
        const ParamPoint at{phi, 1.0};
        const ProtocolConfig cfg{0.3, 1.0, Variant::CnotSequence, false};
        const double fc = classical_fisher(cnot_model(eps, cfg), at, {Parameter::Phi}).phiphi();
        f_cnot = std::max(f_cnot, std::abs(fc - eps));
        f_gott = std::max(f_gott, std::abs(
            classical_fisher(gottesman_model(eps, 0.3), at, {Parameter::Phi}).phiphi() - eps / 2));
        f_qfi = std::max(f_qfi, std::abs(stellar_qfi({eps, 1.0, phi}).phiphi() - fc));
    }
    out.push_back({"cnot_fisher_equals_epsilon", f_cnot, 1e-8});
    out.push_back({"cnot_fisher_equals_qfi", f_qfi, 1e-8});
    out.push_back({"gottesman_fisher_half_epsilon", f_gott, 1e-8});
    const auto search = linear_bound_search(200, c.seed, eps);
    out.push_back({"linear_bound_excess", std::max(0.0, search.max_fisher - eps / 2), 1e-6});

    double residual = 0.0;
    for (double g : {0.3, 0.7})
        for (double phi : {0.0, 1.0, 2.5}) {
            const SourceModel s{eps, g, phi};
            const Eigen::MatrixXcd rho = stellar_block(s);
            for (auto p : {Parameter::Phi, Parameter::G}) {
                const Eigen::MatrixXcd d = stellar_block_derivative(s, p);
                residual = std::max(residual, sld_residual(rho, d, sld(rho, d)));
            }
        }
    out.push_back({"sld_residual", residual, 1e-10});

    double roundtrip = 0.0;
    for (int n : {3, 7, 15})
        for (int b = 0; b <= n; ++b) {
            const Arrival a = b ? Arrival::in_bin(b) : Arrival::none();
            const auto reg = encode_time_bin_modified(BellRegister::fresh(n), a);
            if (!(decode_time_bin(reg, derive_seed(c.seed, static_cast<std::uint64_t>(b))) == a)) roundtrip += 1;
            if (!(run_memory_unmodified(n, a, {0.1, 0.8, 0.4}, 0.2, c.seed).decoded == a)) roundtrip += 1;
        }
    out.push_back({"memory_round_trip_failures", roundtrip, 0.0});

    double sign_rule = 0.0;
    for (int b : {1, 5, 7})
        for (std::uint64_t s = 0; s < 6; ++s) {
            const SourceModel src{0.1, 0.6, 0.9};
            const auto r = run_memory_unmodified(7, Arrival::in_bin(b), src, 0.35, derive_seed(c.seed, s));
            sign_rule = std::max(sign_rule, std::abs(r.p_plus - analytic::memory_unmodified_plus(r.n_minus, src, 0.35)));
        }
    out.push_back({"unmodified_sign_rule", sign_rule, 1e-12});

    double halving = 0.0;
    for (int n : {3, 7, 15, 31})
        halving += std::abs(2 * resources_modified(n).ancilla_qubits() - resources_unmodified(n).ancilla_qubits());
    out.push_back({"ancilla_halving", halving, 0.0});
    return out;
}

/// Runs a subcommand and maps failures onto exit codes.
inline int run_command(const std::string &name, const RunConfig &c, const Sink &sink, std::ostream &err) {
    try {
        if (name == "probs") {
            sink.emit("probs", probs_table(c));
        } else if (name == "fisher") {
            sink.emit("fisher", fisher_table(c));
        } else if (name == "simulate") {
            const auto r = simulate(c);
            if (sink.to_files()) {
                auto trace = sink.open("trace.jsonl");
                for (const auto &w : r.records) trace << trace_line(w).dump() << '\n';
            }
            sink.emit("summary", r.summary);
        } else if (name == "memory-demo") {
            const auto d = memory_demo(c);
            if (sink.format == Format::Json) {
                const nlohmann::ordered_json j{{"transcript", table_json(d.transcript)},
                                       {"resources", table_json(d.resources)},
                                       {"summary", d.summary}};
                if (sink.to_files())
                    sink.open("memory_demo.json") << j.dump(2) << '\n';
                else
                    sink.out << j.dump(2) << '\n';
            } else if (sink.to_files()) {
                auto f = sink.open("memory_demo.csv");
                write_csv(f, d.transcript);
                auto g = sink.open("memory_resources.csv");
                write_csv(g, d.resources);
                sink.out << d.summary << '\n';
            } else {
                write_csv(sink.out, d.transcript);
                sink.out << '\n';
                write_csv(sink.out, d.resources);
                sink.out << '\n' << d.summary << '\n';
            }
        } else if (name == "validate") {
            const auto checks = invariant_checks(c);
            Table t{{"check", "value", "tolerance", "pass"}, {}};
            bool ok = true;
            for (const auto &ch : checks) {
                t.add({ch.name, ch.value, ch.tolerance, ch.pass()});
                ok = ok && ch.pass();
            }
            sink.emit("validate", t);
            if (!ok) {
                err << "qtel: validate: invariant suite failed\n";
                return kExitNumerical;
            }
        } else {
            err << "qtel: unknown command '" << name << "'\n";
            return kExitConfig;
        }
    } catch (const ConfigError &e) {
        err << "qtel: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidArgument &e) {
        err << "qtel: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "qtel: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace qtel::cli
