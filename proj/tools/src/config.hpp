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

#include <filesystem>
#include <string>

#include "json.hpp"

#include "smearlab/linalg.hpp"
#include "smearlab/measure.hpp"
#include "smearlab/phase_space.hpp"
#include "smearlab/semispectral.hpp"

namespace smearlab::cli {

using Json = nlohmann::json;

/// Relative paths in a config resolve against base_dir.
struct Context {
    std::filesystem::path base_dir = ".";
};

/// Reads `key` or returns `fallback`; a present key of the wrong type is a Parse error.
template <typename T>
T get_or(const Json &j, const std::string &key, T fallback) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception &) {
        throw Error(ErrorCode::Parse, "config key '" + key + "' has the wrong type");
    }
}

template <typename T>
T require(const Json &j, const std::string &key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::InvalidArgument, "config key '" + key + "' is required");
    }
    return get_or<T>(j, key, T{});
}

std::filesystem::path resolve_path(const Context &ctx, const std::string &path);

/// Measure: a path, {"file"}, inline {"atoms", "density"}, {"point_mass"},
/// {"gaussian"}, {"uniform"}, {"power_tail"}, {"discrete_uniform"}, {"example1"}.
ScalarMeasure parse_measure(const Json &spec, const Context &ctx);
ProbabilityMeasure parse_probability(const Json &spec, const Context &ctx);

/// Operator: a path, {"file"}, inline {"dim", "entries"}, {"diag"},
/// {"random": {"dim", "seed"}}, {"position": n}, {"momentum": n}.
HermitianOperator parse_operator(const Json &spec, const Context &ctx);

/// State on `dim` levels: "vacuum", "maximally_mixed", {"basis"},
/// {"coherent": {"q", "p"}}, {"squeezed": r}, {"vector": [[re, im], ...]},
/// {"random": {"rank", "seed"}}, a path or {"file"} (operator JSON).
DensityOperator parse_state(const Json &spec, Index dim, const Context &ctx);

PhaseSpaceGrid parse_grid(const Json &config);
PhaseSpaceOptions parse_phase_space_options(const Json &config);
MomentWindows parse_windows(const Json &spec);

} // namespace smearlab::cli
