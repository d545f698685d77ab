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

#include "smearlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace smearlab {

namespace {

using Json = nlohmann::ordered_json;

Json parse(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception &e) {
        throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
    }
}

template <typename F>
auto guarded(F &&f) {
    try {
        return f();
    } catch (const Json::exception &e) {
        throw Error(ErrorCode::Parse, std::string("malformed document: ") + e.what());
    }
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw Error(ErrorCode::Parse, "complex number must be [re, im]");
    }
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

void attach(Json &doc, const Provenance *provenance) {
    if (provenance == nullptr) {
        return;
    }
    Json p = Json::object();
    for (const auto &[k, v] : provenance->entries) {
        p[k] = v;
    }
    doc["provenance"] = std::move(p);
}

Json operator_json(const Matrix &m) {
    Json entries = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            entries.push_back(complex_json(m(r, c)));
        }
    }
    return Json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Matrix operator_from(const Json &j) {
    const auto dim = j.at("dim").get<Index>();
    const auto &entries = j.at("entries");
    if (dim < 1 || dim > kMaxDimension || entries.size() != static_cast<std::size_t>(dim * dim)) {
        throw Error(ErrorCode::Parse, "operator needs dim*dim entries with 1 <= dim <= 256");
    }
    Matrix m(dim, dim);
    std::size_t k = 0;
    for (Index r = 0; r < dim; ++r) {
        for (Index c = 0; c < dim; ++c) {
            m(r, c) = complex_from(entries.at(k++));
        }
    }
    return m;
}

Json povm_json(const DiscretizedPOVM &e) {
    Json effects = Json::array();
    for (const auto &m : e.effects()) {
        effects.push_back(operator_json(m));
    }
    return Json{{"edges", e.edges()}, {"effects", std::move(effects)}, {"reps", e.reps()}};
}

} // namespace

std::string Provenance::csv_header() const {
    std::string out;
    for (const auto &[k, v] : entries) {
        out += "# " + k + ": " + v + "\n";
    }
    return out;
}

std::string format_double(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    }
}

std::string measure_to_json(const ScalarMeasure &mu, const Provenance *provenance) {
    Json atoms = Json::array();
    for (const auto &a : mu.atoms()) {
        atoms.push_back(Json::array({a.location, a.weight.real(), a.weight.imag()}));
    }
    Json doc{{"atoms", std::move(atoms)}, {"density", nullptr}};
    if (const auto &d = mu.density()) {
        Json values = Json::array();
        for (const auto &v : d->values) {
            values.push_back(complex_json(v));
        }
        doc["density"] = Json{{"origin", d->origin}, {"step", d->step}, {"values", std::move(values)}};
    }
    attach(doc, provenance);
    return doc.dump(1) + "\n";
}

ScalarMeasure measure_from_json(const std::string &text) {
    const Json doc = parse(text);
    return guarded([&] {
        std::vector<Atom> atoms;
        for (const auto &a : doc.at("atoms")) {
            if (!a.is_array() || a.size() != 3) {
                throw Error(ErrorCode::Parse, "atom must be [x, re, im]");
            }
            atoms.push_back({a.at(0).get<double>(), {a.at(1).get<double>(), a.at(2).get<double>()}});
        }
        std::optional<GridDensity> density;
        if (doc.contains("density") && !doc.at("density").is_null()) {
            const auto &d = doc.at("density");
            GridDensity g;
            g.origin = d.at("origin").get<double>();
            g.step = d.at("step").get<double>();
            for (const auto &v : d.at("values")) {
                g.values.push_back(complex_from(v));
            }
            density = std::move(g);
        }
        auto sorted = ScalarMeasure::from_unsorted_atoms(std::move(atoms)).atoms();
        return ScalarMeasure(std::move(sorted), std::move(density));
    });
}

std::string operator_to_json(const Matrix &m, const Provenance *provenance) {
    Json doc = operator_json(m);
    attach(doc, provenance);
    return doc.dump(1) + "\n";
}

Matrix operator_from_json(const std::string &text) {
    const Json doc = parse(text);
    return guarded([&] { return operator_from(doc); });
}

std::string povm_to_json(const DiscretizedPOVM &e, const Provenance *provenance) {
    Json doc = povm_json(e);
    attach(doc, provenance);
    return doc.dump(1) + "\n";
}

DiscretizedPOVM povm_from_json(const std::string &text) {
    const Json doc = parse(text);
    return guarded([&] {
        std::vector<Matrix> effects;
        for (const auto &e : doc.at("effects")) {
            effects.push_back(operator_from(e));
        }
        return DiscretizedPOVM(doc.at("edges").get<std::vector<double>>(), std::move(effects),
                               doc.at("reps").get<std::vector<double>>());
    });
}

std::string moment_report_csv(const MomentReport &report, const Provenance *provenance) {
    std::string out = provenance ? provenance->csv_header() : std::string();
    out += "# order: " + std::to_string(report.order) + "\n";
    out += "R,re,im,abs_partial,verdict\n";
    const auto verdict = std::string(to_string(report.verdict));
    for (const auto &w : report.windows) {
        out += format_double(w.radius) + "," + format_double(w.partial.real()) + "," +
               format_double(w.partial.imag()) + "," + format_double(w.partial_absolute) + "," +
               verdict + "\n";
    }
    return out;
}

void write_phase_space_povm(const std::filesystem::path &dir, const PhaseSpacePOVM &e,
                            const DensityOperator &state, const Provenance *provenance) {
    const auto &g = e.grid();
    Json grid{{"half_width", g.half_width},
              {"points_per_axis", g.points_per_axis},
              {"cell_area", g.cell_area()},
              {"dim", e.dim()},
              {"captured_mass", e.captured_mass()},
              {"warnings", e.warnings()}};
    attach(grid, provenance);
    write_text_file(dir / "grid.json", grid.dump(1) + "\n");

    for (int i = 0; i < g.points_per_axis; ++i) {
        Json effects = Json::array();
        for (int j = 0; j < g.points_per_axis; ++j) {
            effects.push_back(operator_json(e.effect(i, j)));
        }
        write_text_file(dir / ("row_" + std::to_string(i) + ".json"),
                        Json{{"row", i}, {"effects", std::move(effects)}}.dump() + "\n");
    }

    const auto mx = bin_probabilities(marginal_x(e), state);
    const auto my = bin_probabilities(marginal_y(e), state);
    const auto mxp = marginal_x(e);
    std::string csv = provenance ? provenance->csv_header() : std::string();
    csv += "bin,lower,upper,rep,x_mass,y_mass\n";
    for (std::size_t b = 0; b < mx.size(); ++b) {
        csv += std::to_string(b) + "," + format_double(mxp.bin_lower(b)) + "," +
               format_double(mxp.bin_upper(b)) + "," + format_double(mxp.reps()[b]) + "," +
               format_double(mx[b]) + "," + format_double(my[b]) + "\n";
    }
    write_text_file(dir / "marginals.csv", csv);
}

PhaseSpacePOVM read_phase_space_povm(const std::filesystem::path &dir) {
    const Json grid = parse(read_text_file(dir / "grid.json"));
    return guarded([&] {
        PhaseSpaceGrid g{grid.at("half_width").get<double>(), grid.at("points_per_axis").get<int>()};
        g.validate();
        std::vector<Matrix> effects;
        for (int i = 0; i < g.points_per_axis; ++i) {
            const Json row = parse(read_text_file(dir / ("row_" + std::to_string(i) + ".json")));
            const auto &list = row.at("effects");
            if (list.size() != static_cast<std::size_t>(g.points_per_axis)) {
                throw Error(ErrorCode::Parse, "phase-space row has the wrong number of effects");
            }
            for (const auto &e : list) {
                effects.push_back(operator_from(e));
            }
        }
        return PhaseSpacePOVM(g, std::move(effects), grid.value("warnings", std::vector<std::string>{}));
    });
}

void write_sample(const std::filesystem::path &csv, const std::filesystem::path &sidecar,
                  const OutcomeSample &s, const Provenance *provenance) {
    std::string out = provenance ? provenance->csv_header() : std::string();
    out += "index,outcome\n";
    for (std::size_t i = 0; i < s.outcomes.size(); ++i) {
        out += std::to_string(i) + "," + format_double(s.outcomes[i]) + "\n";
    }
    write_text_file(csv, out);

    Json meta{{"seed", s.seed}, {"n", s.outcomes.size()}, {"povm_id", s.source}, {"generator", s.generator}};
    attach(meta, provenance);
    write_text_file(sidecar, meta.dump(1) + "\n");
}

OutcomeSample read_sample(const std::filesystem::path &csv, const std::filesystem::path &sidecar) {
    const Json meta = parse(read_text_file(sidecar));
    OutcomeSample s = guarded([&] {
        OutcomeSample out;
        out.seed = meta.at("seed").get<std::uint64_t>();
        out.source = meta.at("povm_id").get<std::string>();
        out.generator = meta.at("generator").get<std::string>();
        return out;
    });
    std::istringstream in(read_text_file(csv));
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header) {
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorCode::Parse, "sample row must be index,outcome");
        }
        try {
            s.outcomes.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception &) {
            throw Error(ErrorCode::Parse, "sample outcome is not a number");
        }
    }
    if (s.outcomes.size() != meta.value("n", s.outcomes.size())) {
        throw Error(ErrorCode::Parse, "sample count disagrees with the sidecar");
    }
    return s;
}

} // namespace smearlab
