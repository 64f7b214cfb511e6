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
 * Run configuration for the command-line front end: a flat JSON object with
 * a versioned "schema" field. Unknown keys are rejected and every range is
 * checked before any computation starts.
 */

#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "qtel/estimation.hpp"

namespace qtel::cli {

inline constexpr int kSchemaVersion = 1;

/// Raised for anything wrong with the configuration (exit code 2).
class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string &what) : Error(what) {}
};

struct RunConfig {
    int schema = kSchemaVersion;
    ProtocolId protocol = ProtocolId::Cnot;
    double epsilon = 0.1;
    double g = 1.0;
    double phi = 0.7;
    std::vector<double> delta{0.0, kPi / 2};
    double eta = 1.0;
    Variant variant = Variant::CnotSequence;
    bool swap_lab_bases = false;
    int n_bins = 1;
    /// Arrival bin for memory-demo; 0 means every bin plus no photon.
    int arrival = 0;
    std::int64_t windows = 100000;
    int repetitions = 1;
    std::uint64_t seed = 1;
    std::vector<double> fisher_phi{0.0, 1.0, 2.5};
    std::vector<double> fisher_g{0.3, 0.5, 0.7, 1.0};
    std::string out_dir;

    friend bool operator==(const RunConfig &, const RunConfig &) = default;

    SourceModel source() const { return {epsilon, g, phi}; }

    ExperimentPlan plan() const {
        ExperimentPlan p;
        p.protocol = protocol;
        p.source = source();
        p.delta_schedule = delta;
        p.windows = windows;
        p.seed = seed;
        p.eta = eta;
        p.variant = variant;
        p.n_bins = n_bins;
        p.swap_lab_bases = swap_lab_bases;
        return p;
    }

    ProtocolConfig protocol_config(std::size_t setting = 0) const {
        return {delta.at(setting), eta, variant, swap_lab_bases};
    }

    void validate() const {
        auto fail = [](const std::string &m) { throw ConfigError("config: " + m); };
        if (schema != kSchemaVersion) fail("unsupported schema " + std::to_string(schema));
        if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail("epsilon must lie in [0, 1]");
        if (!(g >= 0.0 && g <= 1.0)) fail("g must lie in [0, 1]");
        if (!std::isfinite(phi)) fail("phi must be finite");
        if (delta.empty()) fail("delta schedule must be non-empty");
        for (double d : delta)
            if (!std::isfinite(d)) fail("delta values must be finite");
        if (!(eta >= 0.0 && eta <= 1.0)) fail("eta must lie in [0, 1]");
        if (n_bins < 1 || n_bins > 1023) fail("n_bins must lie in [1, 1023]");
        if (arrival < 0 || arrival > n_bins) fail("arrival must lie in [0, n_bins]");
        if (windows < 1) fail("windows must be >= 1");
        if (repetitions < 1) fail("repetitions must be >= 1");
        if (fisher_phi.empty() || fisher_g.empty()) fail("fisher grids must be non-empty");
        for (double v : fisher_phi)
            if (!std::isfinite(v)) fail("fisher_phi values must be finite");
        for (double v : fisher_g)
            if (!(v >= 0.0 && v <= 1.0)) fail("fisher_g values must lie in [0, 1]");
    }

    /// Protocol-specific checks for the commands that build an experiment.
    void validate_plan() const {
        validate();
        try {
            plan().validate();
        } catch (const InvalidArgument &e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
};

inline const char *variant_name(Variant v) {
    return v == Variant::CnotSequence ? "cnot_sequence" : "parity_feed_forward";
}

inline void to_json(nlohmann::json &j, const RunConfig &c) {
    j = nlohmann::json{{"schema", c.schema},
                       {"protocol", to_string(c.protocol)},
                       {"epsilon", c.epsilon},
                       {"g", c.g},
                       {"phi", c.phi},
                       {"delta", c.delta},
                       {"eta", c.eta},
                       {"variant", variant_name(c.variant)},
                       {"swap_lab_bases", c.swap_lab_bases},
                       {"n_bins", c.n_bins},
                       {"arrival", c.arrival},
                       {"windows", c.windows},
                       {"repetitions", c.repetitions},
                       {"seed", c.seed},
                       {"fisher_phi", c.fisher_phi},
                       {"fisher_g", c.fisher_g},
                       {"out_dir", c.out_dir}};
}

inline void from_json(const nlohmann::json &j, RunConfig &c) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    static const std::set<std::string> known{"schema",  "protocol", "epsilon",        "g",          "phi",
                                             "delta",   "eta",      "variant",        "swap_lab_bases",
                                             "n_bins",  "arrival",  "windows",        "repetitions",
                                             "seed",    "fisher_phi", "fisher_g",     "out_dir"};
    for (const auto &[k, _] : j.items())
        if (!known.count(k)) throw ConfigError("config: unknown key '" + k + "'");
    if (!j.contains("schema")) throw ConfigError("config: missing 'schema'");
    try {
        RunConfig d;
        c = d;
        j.at("schema").get_to(c.schema);
        if (j.contains("protocol")) c.protocol = protocol_from_string(j.at("protocol").get<std::string>());
        if (j.contains("epsilon")) j.at("epsilon").get_to(c.epsilon);
        if (j.contains("g")) j.at("g").get_to(c.g);
        if (j.contains("phi")) j.at("phi").get_to(c.phi);
        if (j.contains("delta")) {
            const auto &v = j.at("delta");
            c.delta = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
        }
        if (j.contains("eta")) j.at("eta").get_to(c.eta);
        if (j.contains("variant")) {
            const auto v = j.at("variant").get<std::string>();
            if (v == "cnot_sequence")
                c.variant = Variant::CnotSequence;
            else if (v == "parity_feed_forward")
                c.variant = Variant::ParityFeedForward;
            else
                throw ConfigError("config: unknown variant '" + v + "'");
        }
        if (j.contains("swap_lab_bases")) j.at("swap_lab_bases").get_to(c.swap_lab_bases);
        if (j.contains("n_bins")) j.at("n_bins").get_to(c.n_bins);
        if (j.contains("arrival")) j.at("arrival").get_to(c.arrival);
        if (j.contains("windows")) j.at("windows").get_to(c.windows);
        if (j.contains("repetitions")) j.at("repetitions").get_to(c.repetitions);
        if (j.contains("seed")) j.at("seed").get_to(c.seed);
        if (j.contains("fisher_phi")) j.at("fisher_phi").get_to(c.fisher_phi);
        if (j.contains("fisher_g")) j.at("fisher_g").get_to(c.fisher_g);
        if (j.contains("out_dir")) j.at("out_dir").get_to(c.out_dir);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const InvalidArgument &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

inline RunConfig parse_config(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    RunConfig c = j.get<RunConfig>();
    c.validate();
    return c;
}

inline RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

inline std::string serialize(const RunConfig &c) { return nlohmann::json(c).dump(2); }

} // namespace qtel::cli
