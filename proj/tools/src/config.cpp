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

#include "config.hpp"

#include "smearlab/example1.hpp"
#include "smearlab/io.hpp"
#include "smearlab/random_instances.hpp"

namespace smearlab::cli {

namespace {

bool has(const Json &j, const char *key) { return j.is_object() && j.contains(key); }

Complex complex_value(const Json &j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_array() && j.size() == 2) {
        return {j.at(0).get<double>(), j.at(1).get<double>()};
    }
    throw Error(ErrorCode::Parse, "complex value must be a number or [re, im]");
}

const Json &file_or_self(const Json &spec) { return has(spec, "file") ? spec.at("file") : spec; }

} // namespace

std::filesystem::path resolve_path(const Context &ctx, const std::string &path) {
    const std::filesystem::path p(path);
    return p.is_absolute() ? p : ctx.base_dir / p;
}

ScalarMeasure parse_measure(const Json &spec, const Context &ctx) {
    try {
        if (spec.is_string() || has(spec, "file")) {
            const auto path = resolve_path(ctx, file_or_self(spec).get<std::string>());
            return measure_from_json(read_text_file(path));
        }
        if (has(spec, "atoms")) {
            return measure_from_json(spec.dump());
        }
        if (has(spec, "point_mass")) {
            return ScalarMeasure::point_mass(spec.at("point_mass").get<double>(),
                                             has(spec, "weight") ? complex_value(spec.at("weight")) : 1.0);
        }
        if (has(spec, "gaussian")) {
            const auto &g = spec.at("gaussian");
            return gaussian_density(get_or(g, "mean", 0.0), require<double>(g, "variance"),
                                    require<double>(g, "lower"), require<double>(g, "upper"),
                                    require<double>(g, "step"));
        }
        if (has(spec, "uniform")) {
            const auto &g = spec.at("uniform");
            return uniform_density(require<double>(g, "lower"), require<double>(g, "upper"),
                                   require<double>(g, "step"));
        }
        if (has(spec, "power_tail")) {
            const auto &g = spec.at("power_tail");
            return power_tail_density(require<double>(g, "exponent"), require<double>(g, "half_width"),
                                      require<double>(g, "step"));
        }
        if (has(spec, "discrete_uniform")) {
            return discrete_uniform(spec.at("discrete_uniform").get<std::vector<double>>());
        }
        if (has(spec, "example1")) {
            const auto side = spec.at("example1").get<std::string>();
            const auto ex = example1_build(dyadic_sequence, get_or(spec, "cutoff", 20));
            if (side == "mu") {
                return ex.mu;
            }
            if (side == "nu") {
                return ex.nu;
            }
            throw Error(ErrorCode::InvalidArgument, "example1 measure must be \"mu\" or \"nu\"");
        }
    } catch (const Json::exception &e) {
        throw Error(ErrorCode::Parse, std::string("measure spec: ") + e.what());
    }
    throw Error(ErrorCode::InvalidArgument, "unrecognised measure spec: " + spec.dump());
}

ProbabilityMeasure parse_probability(const Json &spec, const Context &ctx) {
    return ProbabilityMeasure(parse_measure(spec, ctx));
}

HermitianOperator parse_operator(const Json &spec, const Context &ctx) {
    try {
        if (spec.is_string() || has(spec, "file")) {
            const auto path = resolve_path(ctx, file_or_self(spec).get<std::string>());
            return HermitianOperator(operator_from_json(read_text_file(path)));
        }
        if (has(spec, "entries")) {
            return HermitianOperator(operator_from_json(spec.dump()));
        }
        if (has(spec, "diag")) {
            return HermitianOperator::diagonal(spec.at("diag").get<std::vector<double>>());
        }
        if (has(spec, "random")) {
            const auto &r = spec.at("random");
            Rng rng(get_or<std::uint64_t>(r, "seed", 0));
            return random_hermitian(require<Index>(r, "dim"), rng);
        }
        if (has(spec, "position")) {
            return position_operator(spec.at("position").get<Index>());
        }
        if (has(spec, "momentum")) {
            return momentum_operator(spec.at("momentum").get<Index>());
        }
    } catch (const Json::exception &e) {
        throw Error(ErrorCode::Parse, std::string("operator spec: ") + e.what());
    }
    throw Error(ErrorCode::InvalidArgument, "unrecognised operator spec: " + spec.dump());
}

DensityOperator parse_state(const Json &spec, Index dim, const Context &ctx) {
    try {
        if (spec.is_string()) {
            const auto name = spec.get<std::string>();
            if (name == "vacuum") {
                return DensityOperator::basis_state(dim, 0);
            }
            if (name == "maximally_mixed") {
                return DensityOperator::maximally_mixed(dim);
            }
        }
        if (spec.is_string() || has(spec, "file")) {
            const auto path = resolve_path(ctx, file_or_self(spec).get<std::string>());
            return DensityOperator(operator_from_json(read_text_file(path)));
        }
        if (has(spec, "basis")) {
            return DensityOperator::basis_state(dim, spec.at("basis").get<Index>());
        }
        if (has(spec, "coherent")) {
            const auto &c = spec.at("coherent");
            return DensityOperator::pure(coherent_vector(dim, get_or(c, "q", 0.0), get_or(c, "p", 0.0)));
        }
        if (has(spec, "squeezed")) {
            return DensityOperator::pure(squeezed_vacuum_vector(dim, spec.at("squeezed").get<double>()));
        }
        if (has(spec, "vector")) {
            const auto &v = spec.at("vector");
            if (v.size() != static_cast<std::size_t>(dim)) {
                throw Error(ErrorCode::DimensionMismatch, "state vector length differs from the dimension");
            }
            Vector psi(dim);
            for (Index k = 0; k < dim; ++k) {
                psi(k) = complex_value(v.at(static_cast<std::size_t>(k)));
            }
            return DensityOperator::pure(psi);
        }
        if (has(spec, "random")) {
            const auto &r = spec.at("random");
            Rng rng(get_or<std::uint64_t>(r, "seed", 0));
            return random_density(dim, get_or<Index>(r, "rank", dim), rng);
        }
    } catch (const Json::exception &e) {
        throw Error(ErrorCode::Parse, std::string("state spec: ") + e.what());
    }
    throw Error(ErrorCode::InvalidArgument, "unrecognised state spec: " + spec.dump());
}

PhaseSpaceGrid parse_grid(const Json &config) {
    PhaseSpaceGrid grid{get_or(config, "L", 6.0), get_or(config, "m", 48)};
    grid.validate();
    return grid;
}

PhaseSpaceOptions parse_phase_space_options(const Json &config) {
    PhaseSpaceOptions options;
    options.quadrature_order = get_or(config, "quadrature_order", 3);
    options.threads = get_or(config, "threads", 0U);
    if (has(config, "padding")) {
        const auto &p = config.at("padding");
        if (p.is_string() && p.get<std::string>() == "auto") {
            options.displacement_padding = kAutomaticPadding;
        } else if (p.is_number_integer() && p.get<int>() >= 0) {
            options.displacement_padding = p.get<int>();
        } else {
            throw Error(ErrorCode::InvalidArgument, "padding must be \"auto\" or a nonnegative integer");
        }
    }
    return options;
}

MomentWindows parse_windows(const Json &spec) {
    MomentWindows windows;
    if (!spec.is_object()) {
        return windows;
    }
    windows.radii = get_or(spec, "radii", std::vector<double>{});
    if (has(spec, "criteria")) {
        const auto &c = spec.at("criteria");
        if (c.is_string()) {
            if (c.get<std::string>() != "tail_diagnostic") {
                throw Error(ErrorCode::InvalidArgument, "unknown criteria preset " + c.dump());
            }
            windows.criteria = ConvergenceCriteria::tail_diagnostic();
        } else {
            windows.criteria.relative_tolerance =
                get_or(c, "relative_tolerance", windows.criteria.relative_tolerance);
            windows.criteria.growth_threshold =
                get_or(c, "growth_threshold", windows.criteria.growth_threshold);
            windows.criteria.growth_windows = get_or(c, "growth_windows", windows.criteria.growth_windows);
        }
    }
    return windows;
}

} // namespace smearlab::cli
