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

#include "smearlab/version.hpp"

namespace smearlab {

std::string_view library_version() noexcept { return "1.0.0"; }

const std::vector<std::pair<std::string_view, std::string_view>> &module_versions() {
    static const std::vector<std::pair<std::string_view, std::string_view>> versions{
        {"scalar-measures", "1.0.0"}, {"operator-core", "1.0.0"}, {"semispectral", "1.0.0"},
        {"phase-space", "1.0.0"},     {"sampling-stats", "1.0.0"}, {"cli", "1.0.0"},
    };
    return versions;
}

} // namespace smearlab
