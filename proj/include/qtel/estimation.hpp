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
 * Monte-Carlo experiments and maximum-likelihood phase estimation.
 *
 * Windows cycle through the delta schedule (window w uses setting
 * w mod |schedule|). A window receives a photon with probability
 * epsilon * n_bins; that product is the per-window event probability used
 * by every likelihood and Fisher figure here. The visibility g is treated as
 * known; only phi is estimated.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qtel/fisher.hpp"
#include "qtel/protocols.hpp"
#include "qtel/sources.hpp"

namespace qtel {

enum class ProtocolId { Direct, Cnot, Gottesman, MemoryModified, MemoryUnmodified };

inline const char *to_string(ProtocolId p) {
    switch (p) {
    case ProtocolId::Direct:
        return "direct";
    case ProtocolId::Cnot:
        return "cnot";
    case ProtocolId::Gottesman:
        return "gottesman";
    case ProtocolId::MemoryModified:
        return "memory_modified";
    case ProtocolId::MemoryUnmodified:
        return "memory_unmodified";
    }
    return "?";
}

inline ProtocolId protocol_from_string(const std::string &s) {
    for (auto p : {ProtocolId::Direct, ProtocolId::Cnot, ProtocolId::Gottesman, ProtocolId::MemoryModified,
                   ProtocolId::MemoryUnmodified})
        if (s == to_string(p)) return p;
    throw InvalidArgument("unknown protocol '" + s + "'");
}

/// SplitMix64 step; derives independent per-repetition seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct ExperimentPlan {
    ProtocolId protocol = ProtocolId::Cnot;
    SourceModel source;
    std::vector<double> delta_schedule{0.0, kPi / 2};
    std::int64_t windows = 1000;
    std::uint64_t seed = 1;
    double eta = 1.0;
    Variant variant = Variant::CnotSequence;
    int n_bins = 1;
    bool swap_lab_bases = false;

    double window_epsilon() const { return source.epsilon * n_bins; }

    ProtocolConfig config(std::size_t setting) const {
        return {delta_schedule.at(setting), eta, variant, swap_lab_bases};
    }

    void validate() const {
        source.validate();
        if (windows < 1) throw InvalidArgument("ExperimentPlan: windows must be >= 1");
        if (delta_schedule.empty()) throw InvalidArgument("ExperimentPlan: delta schedule must be non-empty");
        for (double d : delta_schedule)
            if (!std::isfinite(d)) throw InvalidArgument("ExperimentPlan: delta values must be finite");
        if (n_bins < 1) throw InvalidArgument("ExperimentPlan: n_bins must be >= 1");
        if (window_epsilon() > 1.0) throw InvalidArgument("ExperimentPlan: epsilon * n_bins exceeds 1");
        config(0).validate();
        if (eta < 1.0 && protocol != ProtocolId::Cnot)
            throw InvalidArgument("ExperimentPlan: eta < 1 is only modelled for the cnot protocol");
        if (n_bins > 1 && (protocol == ProtocolId::Cnot || protocol == ProtocolId::Gottesman))
            throw InvalidArgument("ExperimentPlan: the six-mode and linear protocols act on a single bin (n_bins = 1)");
    }
};

struct WindowRecord {
    std::int64_t window = 0;
    int arrival_bin = 0;
    Herald herald = Herald::Invalid;
    Outcome record;
    int decoded_bin = 0;
    std::size_t setting = 0;
    std::uint64_t seed = 0;
};

/// Effects over the records run_experiment emits, with ancilla loss folded
/// in blind (records carry no loss flag).
inline LinearPovm estimation_povm(const ExperimentPlan &plan, std::size_t setting) {
    const auto cfg = plan.config(setting);
    switch (plan.protocol) {
    case ProtocolId::Cnot:
        return cnot_povm(cfg, LossAccounting::Blind);
    case ProtocolId::Gottesman:
        return gottesman_povm(cfg.delta);
    case ProtocolId::Direct:
    case ProtocolId::MemoryModified:
        return direct_povm(cfg.delta, cfg.swap_lab_bases);
    case ProtocolId::MemoryUnmodified: {
        // The final record {rotated outcome, n_minus parity} has the statistics
        // of the direct record {X outcome, rotated outcome} read in reverse.
        const auto d = direct_povm(cfg.delta, false);
        std::vector<Outcome> outs;
        for (const auto &o : d.outcomes()) outs.push_back({o[1], o[0]});
        return LinearPovm(outs, d.effects());
    }
    }
    throw InvalidArgument("estimation_povm: unknown protocol");
}

inline Herald herald_for(ProtocolId p, const Outcome &record, bool photon_decoded) {
    switch (p) {
    case ProtocolId::Cnot:
        return classify_six_mode(record);
    case ProtocolId::Gottesman: {
        int total = 0;
        for (int n : record) total += n;
        return total == 2 ? Herald::PhotonArrived : total == 1 ? Herald::Vacuum : Herald::Invalid;
    }
    default:
        return photon_decoded ? Herald::PhotonArrived : Herald::Vacuum;
    }
}

namespace detail {

struct SettingSampler {
    LinearPovm povm;
    std::discrete_distribution<std::size_t> photon;
    std::discrete_distribution<std::size_t> dark;
};

inline std::discrete_distribution<std::size_t> make_discrete(std::vector<double> p) {
    for (double &v : p) v = std::max(v, 0.0);
    return std::discrete_distribution<std::size_t>(p.begin(), p.end());
}

} // namespace detail

/**
 * Samples `plan.windows` windows. Arrivals come from sample_arrival; the
 * six-mode, linear and direct protocols then draw the detector record from
 * their circuit-derived distribution for a photon or an empty input, and the
 * memory protocols run the full register simulation for the window.
 */
inline std::vector<WindowRecord> run_experiment(const ExperimentPlan &plan) {
    plan.validate();
    std::mt19937_64 rng(plan.seed);
    const TimeBinConfig bins{plan.n_bins, 1.0};
    const bool memory = plan.protocol == ProtocolId::MemoryModified || plan.protocol == ProtocolId::MemoryUnmodified;
    std::vector<detail::SettingSampler> samplers;
    if (!memory)
        for (std::size_t s = 0; s < plan.delta_schedule.size(); ++s) {
            auto povm = estimation_povm(plan, s);
            const auto photon = povm.probabilities(stellar_block({1.0, plan.source.g, plan.source.phi}));
            const auto dark = povm.probabilities(stellar_block({0.0, plan.source.g, plan.source.phi}));
            samplers.push_back({povm, detail::make_discrete(photon), detail::make_discrete(dark)});
        }

    std::vector<WindowRecord> out;
    out.reserve(static_cast<std::size_t>(plan.windows));
    for (std::int64_t w = 0; w < plan.windows; ++w) {
        const std::size_t setting = static_cast<std::size_t>(w) % plan.delta_schedule.size();
        const Arrival arrival = sample_arrival(bins, plan.source.epsilon, rng);
        WindowRecord rec;
        rec.window = w;
        rec.arrival_bin = arrival.bin;
        rec.setting = setting;
        rec.seed = plan.seed;
        if (memory) {
            const std::uint64_t run_seed = rng();
            const double delta = plan.delta_schedule[setting];
            MemoryRunResult r;
            if (plan.protocol == ProtocolId::MemoryModified) {
                r = run_memory_modified(plan.n_bins, arrival, plan.source, delta, run_seed, plan.swap_lab_bases);
                rec.record = r.decoded.photon() ? r.outcome : Outcome{-1, -1};
            } else {
                r = run_memory_unmodified(plan.n_bins, arrival, plan.source, delta, run_seed);
                rec.record = r.decoded.photon() ? Outcome{r.outcome[0], r.n_minus % 2} : Outcome{-1, -1};
            }
            rec.decoded_bin = r.decoded.bin;
            rec.herald = herald_for(plan.protocol, rec.record, r.decoded.photon());
        } else {
            auto &sm = samplers[setting];
            const std::size_t k = arrival.photon() ? sm.photon(rng) : sm.dark(rng);
            rec.record = sm.povm.outcomes()[k];
            rec.herald = herald_for(plan.protocol, rec.record, arrival.photon());
            rec.decoded_bin = rec.herald == Herald::PhotonArrived ? 1 : 0;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

struct EstimateReport {
    double phi_hat = 0.0;
    double truth = 0.0;
    /// Wrapped distance |phi_hat - truth| on the circle.
    double error = 0.0;
    double empirical_mse = 0.0;
    double crb = 0.0;
    double fisher_per_window = 0.0;
    std::int64_t windows = 0;
    std::int64_t n_heralded = 0;
    std::int64_t n_vacuum = 0;
    std::int64_t n_invalid = 0;
    /// True when no two settings differ by pi/2 (mod pi): cos(phi + delta)
    /// then leaves phi -> -phi - 2 delta unresolved.
    bool ambiguous = false;
};

inline bool schedule_resolves_sign(const std::vector<double> &schedule) {
    for (std::size_t i = 0; i < schedule.size(); ++i)
        for (std::size_t j = i + 1; j < schedule.size(); ++j) {
            const double d = std::remainder(schedule[i] - schedule[j], kPi);
            if (std::abs(std::abs(d) - kPi / 2) < 1e-9) return true;
        }
    return false;
}

struct CrbReport {
    std::vector<double> per_setting;
    /// Schedule-averaged phase information per window (loss flagged).
    double f_bar = 0.0;
    /// Same with ancilla loss indistinguishable from ordinary records.
    double f_bar_blind = 0.0;
    double crb = 0.0;
    bool uninformative = false;
};

/// Per-window outcome model of a protocol; the memory protocols share the
/// direct model with the window probability epsilon * n_bins.
inline OutcomeModel protocol_model(ProtocolId p, double window_epsilon, const ProtocolConfig &cfg,
                                   LossAccounting accounting = LossAccounting::Flagged) {
    switch (p) {
    case ProtocolId::Cnot:
        return cnot_model(window_epsilon, cfg, accounting);
    case ProtocolId::Gottesman:
        return gottesman_model(window_epsilon, cfg.delta);
    default:
        return direct_model(window_epsilon, cfg.delta, cfg.swap_lab_bases);
    }
}

/// Phase Fisher information per window of one setting.
inline double protocol_phase_fisher(ProtocolId p, const SourceModel &src, const ProtocolConfig &cfg, int n_bins,
                                    LossAccounting accounting) {
    const auto model = protocol_model(p, src.epsilon * n_bins, cfg, accounting);
    return classical_fisher(model, {src.phi, src.g}, {Parameter::Phi}).phiphi();
}

inline CrbReport crb_report(const ExperimentPlan &plan) {
    plan.validate();
    CrbReport r;
    for (std::size_t s = 0; s < plan.delta_schedule.size(); ++s) {
        const auto cfg = plan.config(s);
        r.per_setting.push_back(protocol_phase_fisher(plan.protocol, plan.source, cfg, plan.n_bins,
                                                      LossAccounting::Flagged));
        r.f_bar_blind += protocol_phase_fisher(plan.protocol, plan.source, cfg, plan.n_bins, LossAccounting::Blind);
        r.f_bar += r.per_setting.back();
    }
    const double n = static_cast<double>(plan.delta_schedule.size());
    r.f_bar /= n;
    r.f_bar_blind /= n;
    r.uninformative = !(r.f_bar > 1e-14);
    r.crb = r.uninformative ? std::numeric_limits<double>::infinity()
                            : 1.0 / (static_cast<double>(plan.windows) * r.f_bar);
    return r;
}

/// Counts of heralded records per setting, indexed like the setting's POVM.
struct HeraldedCounts {
    std::vector<LinearPovm> povms;
    std::vector<std::vector<std::int64_t>> counts;
    std::int64_t n_heralded = 0, n_vacuum = 0, n_invalid = 0;
};

inline HeraldedCounts tally(const std::vector<WindowRecord> &records, const ExperimentPlan &plan) {
    HeraldedCounts h;
    std::vector<std::map<Outcome, std::size_t>> index;
    for (std::size_t s = 0; s < plan.delta_schedule.size(); ++s) {
        h.povms.push_back(estimation_povm(plan, s));
        std::map<Outcome, std::size_t> m;
        for (std::size_t k = 0; k < h.povms.back().size(); ++k) m[h.povms.back().outcomes()[k]] = k;
        index.push_back(std::move(m));
        h.counts.emplace_back(h.povms.back().size(), 0);
    }
    for (const auto &r : records) {
        if (r.herald == Herald::Vacuum) ++h.n_vacuum;
        if (r.herald == Herald::Invalid) ++h.n_invalid;
        if (r.herald != Herald::PhotonArrived) continue;
        ++h.n_heralded;
        const auto it = index.at(r.setting).find(r.record);
        if (it == index[r.setting].end()) throw NumericalError("record outside the protocol's outcome set");
        ++h.counts[r.setting][it->second];
    }
    return h;
}

inline double log_likelihood(const HeraldedCounts &h, const ExperimentPlan &plan, double phi) {
    const auto rho = detail::raw_stellar_block(plan.window_epsilon(), plan.source.g, phi);
    double ll = 0.0;
    for (std::size_t s = 0; s < h.povms.size(); ++s) {
        const auto &c = h.counts[s];
        const auto &effects = h.povms[s].effects();
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            const double p = (effects[k] * rho).trace().real();
            ll += static_cast<double>(c[k]) * std::log(std::max(p, 1e-300));
        }
    }
    return ll;
}

/**
 * Maximum-likelihood phi from heralded records: 1024-point grid over
 * [-pi, pi), then golden-section refinement around the best grid point to
 * 1e-10.
 */
inline EstimateReport mle_phase(const std::vector<WindowRecord> &records, const ExperimentPlan &plan) {
    plan.validate();
    const auto h = tally(records, plan);
    if (h.n_heralded == 0) throw NumericalError("degenerate likelihood: no heralded records");
    constexpr int kGrid = 1024;
    const double step = 2 * kPi / kGrid;
    int best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
        const double ll = log_likelihood(h, plan, -kPi + i * step);
        if (ll > best_ll) {
            best_ll = ll;
            best = i;
        }
    }
    double a = -kPi + (best - 1) * step, b = -kPi + (best + 1) * step;
    const double invphi = (std::sqrt(5.0) - 1) / 2;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = log_likelihood(h, plan, c), fd = log_likelihood(h, plan, d);
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = log_likelihood(h, plan, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = log_likelihood(h, plan, d);
        }
    }
    EstimateReport r;
    r.phi_hat = wrap_phase((a + b) / 2);
    r.truth = plan.source.phi;
    r.error = wrapped_distance(r.phi_hat, r.truth);
    r.empirical_mse = r.error * r.error;
    r.windows = plan.windows;
    r.n_heralded = h.n_heralded;
    r.n_vacuum = h.n_vacuum;
    r.n_invalid = h.n_invalid;
    r.ambiguous = !schedule_resolves_sign(plan.delta_schedule);
    const auto crb = crb_report(plan);
    r.fisher_per_window = crb.f_bar;
    r.crb = crb.crb;
    return r;
}

struct RepetitionReport {
    int repetitions = 0;
    double mse = 0.0;
    double crb = 0.0;
    double mse_over_crb = 0.0;
    double max_error = 0.0;
};

/// Repeats the experiment with derived seeds and compares the empirical MSE
/// with the Cramer-Rao bound.
inline RepetitionReport repeat_estimation(const ExperimentPlan &plan, int repetitions) {
    if (repetitions < 1) throw InvalidArgument("repetitions must be >= 1");
    RepetitionReport rep;
    rep.repetitions = repetitions;
    for (int i = 0; i < repetitions; ++i) {
        ExperimentPlan p = plan;
        p.seed = derive_seed(plan.seed, static_cast<std::uint64_t>(i));
        const auto r = mle_phase(run_experiment(p), p);
        rep.mse += r.empirical_mse;
        rep.max_error = std::max(rep.max_error, r.error);
        rep.crb = r.crb;
    }
    rep.mse /= repetitions;
    rep.mse_over_crb = rep.mse / rep.crb;
    return rep;
}

} // namespace qtel
