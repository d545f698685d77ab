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

#include <map>

#include "commands.hpp"

namespace smearlab::cli {

namespace {

using PresetTable = std::map<std::string, std::map<std::string, const char *>>;

const PresetTable &presets() {
    static const PresetTable table{
        {"convolve",
         {
             {"point-masses", R"({
                "mu": {"point_mass": 1.5},
                "nu": {"point_mass": -0.25, "weight": [2.0, 0.0]},
                "kmax": 2,
                "checks": {"single_atom": {"location": 1.25, "weight": [2.0, 0.0]}}
             })"},
             {"example1", R"({
                "mu": {"example1": "mu", "cutoff": 20},
                "nu": {"example1": "nu", "cutoff": 20},
                "kmax": 0,
                "example1_table": {"cutoff": 20}
             })"},
             {"gaussian", R"({
                "mu": {"gaussian": {"mean": 0.0, "variance": 1.0, "lower": -12.0, "upper": 12.0, "step": 0.05}},
                "nu": {"gaussian": {"mean": 0.0, "variance": 2.0, "lower": -16.0, "upper": 16.0, "step": 0.05}},
                "kmax": 4,
                "checks": {"moments": [{"k": 2, "re": 3.0, "tolerance": 1e-3},
                                       {"k": 1, "re": 0.0, "tolerance": 1e-10}]}
             })"},
         }},
        {"moments",
         {
             {"gaussian", R"({
                "measure": {"gaussian": {"mean": 0.0, "variance": 1.0, "lower": -10.0, "upper": 10.0, "step": 0.01}},
                "orders": [0, 1, 2, 3, 4],
                "expect": {"0": "converged", "1": "converged", "2": "converged", "3": "converged", "4": "converged"}
             })"},
             {"heavy-tail", R"({
                "measure": {"power_tail": {"exponent": 3.0, "half_width": 1e6, "step": 1.0}},
                "orders": [1, 2],
                "windows": {"radii": [1e2, 1e3, 1e4, 1e5, 1e6], "criteria": "tail_diagnostic"},
                "expect": {"1": "converged", "2": "diverging"}
             })"},
         }},
        {"example1", {{"default", R"({"cutoff": 20})"}}},
        {"smear",
         {
             {"identity", R"({
                "operator": {"random": {"dim": 6, "seed": 11}},
                "mu": {"point_mass": 0.0},
                "kmax": 4,
                "tolerance": 1e-10
             })"},
             {"random", R"({
                "operator": {"random": {"dim": 8, "seed": 7}},
                "mu": {"discrete_uniform": [-1.25, -0.5, 0.0, 0.3, 0.75, 1.1, 2.0]},
                "kmax": 5,
                "tolerance": 1e-8
             })"},
             {"heavy-tail", R"({
                "operator": {"diag": [-1.0, 0.0, 1.0]},
                "mu": {"power_tail": {"exponent": 3.0, "half_width": 1e6, "step": 1.0}},
                "edges": [-2.0, -1.0, 0.0, 1.0, 2.0],
                "kmax": 2,
                "windows": {"radii": [1e2, 1e3, 1e4, 1e5, 1e6], "criteria": "tail_diagnostic"}
             })"},
             {"gaussian", R"({
                "operator": {"diag": [-1.0, 0.5, 2.0]},
                "mu": {"gaussian": {"mean": 0.0, "variance": 0.25, "lower": -4.0, "upper": 4.0, "step": 0.01}},
                "edges": {"lower": -6.0, "upper": 6.0, "step": 0.05},
                "kmax": 2,
                "tolerance": 2e-3
             })"},
         }},
        {"phasespace",
         {
             {"vacuum", R"({
                "N": 40, "L": 6.0, "m": 48,
                "state": "vacuum",
                "kmax": 2,
                "sweep": [20, 40, 60],
                "block": 10,
                "write_povm": false,
                "checks": {"distance": 5e-3, "monotone": true, "mass": 5e-3,
                           "normal_bins": {"variance": 1.0, "tolerance": 2e-3},
                           "variance": {"value": 1.0, "tolerance": 1e-2},
                           "identity": 1e-10}
             })"},
             {"small", R"({
                "N": 12, "L": 4.0, "m": 16,
                "state": "vacuum",
                "kmax": 2,
                "write_povm": true,
                "checks": {"identity": 1e-10}
             })"},
         }},
        {"sample",
         {
             {"eigenstate", R"({
                "source": {"spectral": {"diag": [0.0, 1.0]}},
                "state": {"basis": 0},
                "n": 1000, "kmax": 2, "seed": 1,
                "checks": {"constant": 0.0, "z": 5.0}
             })"},
             {"mixed", R"({
                "source": {"spectral": {"diag": [0.0, 1.0]}},
                "state": "maximally_mixed",
                "n": 100000, "kmax": 4, "seed": 2,
                "checks": {"frequency": {"outcome": 0.0, "p": 0.5, "sigmas": 5.0}, "z": 5.0}
             })"},
             {"vacuum-marginal", R"({
                "source": {"phasespace": {"N": 40, "L": 6.0, "m": 48, "state": "vacuum", "axis": "x"}},
                "state": "vacuum",
                "n": 100000, "kmax": 4, "seed": 3,
                "checks": {"z": 5.0}
             })"},
         }},
    };
    return table;
}

} // namespace

Json preset_config(const std::string &command, const std::string &name) {
    const auto &table = presets();
    const auto c = table.find(command);
    if (c == table.end() || !c->second.contains(name)) {
        throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "' for " + command);
    }
    return Json::parse(c->second.at(name));
}

std::vector<std::string> preset_names(const std::string &command) {
    std::vector<std::string> out;
    const auto &table = presets();
    if (const auto c = table.find(command); c != table.end()) {
        for (const auto &[name, text] : c->second) {
            out.push_back(name);
        }
    }
    return out;
}

} // namespace smearlab::cli
