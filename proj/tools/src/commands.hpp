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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "smearlab/io.hpp"

namespace smearlab::cli {

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

/// Shared state of one command run.
struct Run {
    Json config;
    Context context;
    std::filesystem::path out_dir;
    Provenance provenance;
    std::vector<Check> checks;
    Json summary = Json::object();

    void check(std::string name, bool passed, std::string detail);
    void write(const std::string &file, const std::string &content) const;
};

void cmd_convolve(Run &run);
void cmd_moments(Run &run);
void cmd_example1(Run &run);
void cmd_smear(Run &run);
void cmd_phasespace(Run &run);
void cmd_sample(Run &run);

const std::vector<std::string> &command_names();

/// Preset configs by command; throws InvalidArgument for unknown names.
Json preset_config(const std::string &command, const std::string &name);
std::vector<std::string> preset_names(const std::string &command);

struct RunOptions {
    std::string command;
    std::optional<std::filesystem::path> config;
    std::filesystem::path out = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> preset;
};

/// Preset, then config file (merge-patched over the preset), then --seed.
Json resolve_config(const RunOptions &options);

std::string sha256_hex(const std::string &data);

/// 0 when every check passes, 2 when a check fails, 1 on errors. Errors are
/// reported as JSON on `err` and in <out>/error.json.
int run_command(const RunOptions &options, std::ostream &out, std::ostream &err);

} // namespace smearlab::cli
