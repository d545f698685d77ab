// Copyright 2026 The smearlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"

int main(int argc, char **argv) {
    CLI::App app{"smearlab: measure convolutions, smeared POVMs and phase-space marginals"};
    app.require_subcommand(1);

    smearlab::cli::RunOptions options;
    std::string config;
    std::string out = "out";
    std::uint64_t seed = 0;
    std::string preset;

    for (const auto &name : smearlab::cli::command_names()) {
        auto *sub = app.add_subcommand(name, "run the " + name + " computation");
        sub->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--out", out, "output directory")->capture_default_str();
        sub->add_option("--seed", seed, "random seed (overrides the config)");
        std::string presets;
        for (const auto &p : smearlab::cli::preset_names(name)) {
            presets += (presets.empty() ? "" : ", ") + p;
        }
        sub->add_option("--preset", preset, "built-in config: " + presets);
        sub->callback([&options, name]() { options.command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    auto *sub = app.get_subcommand(options.command);
    if (!config.empty()) {
        options.config = config;
    }
    options.out = out;
    if (sub->count("--seed") > 0) {
        options.seed = seed;
    }
    if (!preset.empty()) {
        options.preset = preset;
    }
    return smearlab::cli::run_command(options, std::cout, std::cerr);
}
