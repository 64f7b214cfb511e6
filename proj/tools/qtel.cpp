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


// qtel: command-line front end (probs, fisher, simulate, memory-demo, validate).

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "qtel/cli/commands.hpp"

int main(int argc, char **argv) {
    using namespace qtel::cli;
    CLI::App app{"Simulate entanglement-assisted telescope protocols"};
    app.require_subcommand(1);
    std::string config_path, out_dir, format = "csv";
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "RNG seed (overrides the config)");
    app.add_option("--out", out_dir, "output directory (default: stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    for (const char *name : {"probs", "fisher", "simulate", "memory-demo", "validate"})
        app.add_subcommand(name)->fallthrough();
    app.get_subcommand("probs")->description("outcome probabilities with analytic references");
    app.get_subcommand("fisher")->description("classical and quantum Fisher information sweep");
    app.get_subcommand("simulate")->description("Monte-Carlo experiment and maximum-likelihood estimate");
    app.get_subcommand("memory-demo")->description("time-bin encode/decode transcript and resource counts");
    app.get_subcommand("validate")->description("run the invariant suite");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }
    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        if (seed) cfg.seed = *seed;
        if (out_dir.empty()) out_dir = cfg.out_dir;
        cfg.validate();
    } catch (const qtel::Error &e) {
        std::cerr << "qtel: " << e.what() << '\n';
        return kExitConfig;
    }
    const Sink sink{std::cout, out_dir, format_from_string(format)};
    return run_command(app.get_subcommands().front()->get_name(), cfg, sink, std::cerr);
}
