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

/**
 * @file
 * Text formats.
 *
 * Measure JSON:  {"atoms": [[x, re, im], ...],
 *                 "density": {"origin": x0, "step": h, "values": [[re, im], ...]} | null}
 * Operator JSON: {"dim": n, "entries": [[re, im], ...]} (row-major)
 * POVM JSON:     {"edges": [...], "effects": [operator, ...], "reps": [...]}
 *
 * Writers accept an optional Provenance, stored under "provenance" in JSON
 * files and as leading "# key: value" lines in CSV files. Readers ignore it.
 * Numbers are written with 17 significant digits.
 */

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "smearlab/linalg.hpp"
#include "smearlab/measure.hpp"
#include "smearlab/phase_space.hpp"
#include "smearlab/sampling.hpp"
#include "smearlab/semispectral.hpp"

namespace smearlab {

struct Provenance {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(std::string key, std::string value) {
        entries.emplace_back(std::move(key), std::move(value));
    }
    /// "# key: value\n" lines.
    [[nodiscard]] std::string csv_header() const;
};

std::string format_double(double x);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &content);

std::string measure_to_json(const ScalarMeasure &mu, const Provenance *provenance = nullptr);
ScalarMeasure measure_from_json(const std::string &text);

std::string operator_to_json(const Matrix &m, const Provenance *provenance = nullptr);
Matrix operator_from_json(const std::string &text);

std::string povm_to_json(const DiscretizedPOVM &e, const Provenance *provenance = nullptr);
DiscretizedPOVM povm_from_json(const std::string &text);

/// Columns R, re, im, abs_partial, verdict; one row per window.
std::string moment_report_csv(const MomentReport &report, const Provenance *provenance = nullptr);

/// grid.json, row_<i>.json (the m effects with q in cell i, ordered by p),
/// marginals.csv (bin, lower, upper, rep, x_mass, y_mass), masses in `state`.
void write_phase_space_povm(const std::filesystem::path &dir, const PhaseSpacePOVM &e,
                            const DensityOperator &state, const Provenance *provenance = nullptr);
PhaseSpacePOVM read_phase_space_povm(const std::filesystem::path &dir);

/// CSV (index, outcome) and a JSON sidecar (seed, n, povm_id, generator).
void write_sample(const std::filesystem::path &csv, const std::filesystem::path &sidecar,
                  const OutcomeSample &s, const Provenance *provenance = nullptr);
OutcomeSample read_sample(const std::filesystem::path &csv, const std::filesystem::path &sidecar);

} // namespace smearlab
