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

#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <sstream>

#include "smearlab/example1.hpp"
#include "smearlab/sampling.hpp"

namespace smearlab::cli {

namespace {

std::string fmt(double x) { return format_double(x); }

// Short form for human-readable check details.
std::string brief(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6g", x);
    return buffer;
}

std::string within(double value, double tolerance) {
    return brief(value) + " (tolerance " + brief(tolerance) + ")";
}

bool has(const Json &j, const char *key) { return j.is_object() && j.contains(key); }

Json moment_summary(const MomentReport &r) {
    return {{"k", r.order},
            {"re", r.value().real()},
            {"im", r.value().imag()},
            {"verdict", std::string(to_string(r.verdict))}};
}

std::vector<double> parse_edges(const Json &spec) {
    if (spec.is_array()) {
        return spec.get<std::vector<double>>();
    }
    const double lower = require<double>(spec, "lower");
    const double upper = require<double>(spec, "upper");
    const double step = require<double>(spec, "step");
    if (!(upper > lower) || !(step > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "edge grid needs lower < upper and step > 0");
    }
    const auto count = static_cast<long>(std::llround((upper - lower) / step));
    if (count > (1L << 20)) {
        throw Error(ErrorCode::GridOverflow, "edge grid has too many bins");
    }
    std::vector<double> edges;
    for (long i = 0; i <= count; ++i) {
        edges.push_back(lower + static_cast<double>(i) * step);
    }
    return edges;
}

// Table of lambda({n}) and slice integrals, plus the reproduction checks.
void example1_report(Run &run, const Example1 &ex, const ScalarMeasure &lambda) {
    std::string csv = run.provenance.csv_header() + "n,lambda_re,lambda_im,slice_abs_integral\n";
    double worst_atom = 0.0;
    double worst_slice = 0.0;
    for (long n = -ex.support_bound(); n <= ex.support_bound(); ++n) {
        const Complex w = lambda.atom_weight_at(static_cast<double>(n));
        std::string slice;
        if (n % 2 == 0) {
            worst_atom = std::max(worst_atom, std::abs(w));
            const double s = example1_slice_absolute_integral(ex, n);
            worst_slice = std::max(worst_slice, std::abs(s - 1.0));
            slice = fmt(s);
        }
        csv += std::to_string(n) + "," + fmt(w.real()) + "," + fmt(w.imag()) + "," + slice + "\n";
    }
    run.write("example1.csv", csv);
    const Complex integral = integrate([&ex](double x) { return Complex(ex.f(x)); }, lambda);
    run.summary["example1"] = {{"cutoff", ex.cutoff},
                               {"max_even_atom", worst_atom},
                               {"integral_re", integral.real()},
                               {"integral_im", integral.imag()},
                               {"max_slice_deviation", worst_slice}};
    run.check("even atoms vanish", worst_atom <= 1e-12, within(worst_atom, 1e-12));
    run.check("integral of f vanishes", std::abs(integral) <= 1e-10, within(std::abs(integral), 1e-10));
    run.check("slice integrals equal 1", worst_slice <= 1e-9, within(worst_slice, 1e-9));
}

DiscretizedPOVM build_source(const Json &source, const Context &ctx, std::string &label) {
    if (has(source, "povm")) {
        label = "povm";
        const auto &p = source.at("povm");
        const std::string text =
            p.is_string() ? read_text_file(resolve_path(ctx, p.get<std::string>())) : p.dump();
        return povm_from_json(text);
    }
    if (has(source, "spectral")) {
        label = "spectral";
        const auto spectral = spectral_measure_of(parse_operator(source.at("spectral"), ctx));
        return bin_measure(AtomicPOVM(spectral), isolating_edges(spectral.decomposition().eigenvalues));
    }
    if (has(source, "smear")) {
        label = "smear";
        const auto &s = source.at("smear");
        const auto spectral = spectral_measure_of(parse_operator(s.at("operator"), ctx));
        return smear(parse_probability(s.at("mu"), ctx), spectral, parse_edges(s.at("edges")));
    }
    if (has(source, "phasespace")) {
        const auto &ps = source.at("phasespace");
        const auto n = get_or<Index>(ps, "N", 40);
        const auto t = parse_state(ps.value("state", Json("vacuum")), n, ctx);
        const auto e = build_phase_space_povm(t, parse_grid(ps), parse_phase_space_options(ps));
        const auto axis = get_or<std::string>(ps, "axis", "x");
        if (axis != "x" && axis != "y") {
            throw Error(ErrorCode::InvalidArgument, "phasespace axis must be \"x\" or \"y\"");
        }
        label = "phasespace-" + axis;
        return axis == "x" ? marginal_x(e) : marginal_y(e);
    }
    throw Error(ErrorCode::InvalidArgument, "sample source needs povm, spectral, smear or phasespace");
}

} // namespace

void cmd_convolve(Run &run) {
    const auto &cfg = run.config;
    const auto mu = parse_measure(require<Json>(cfg, "mu"), run.context);
    const auto nu = parse_measure(require<Json>(cfg, "nu"), run.context);
    ConvolutionOptions options;
    options.max_grid_cells = get_or<std::size_t>(cfg, "max_grid_cells", options.max_grid_cells);
    const auto lambda = convolve(mu, nu, options);
    run.write("convolution.json", measure_to_json(lambda, &run.provenance));

    const auto windows = parse_windows(cfg.value("windows", Json::object()));
    const auto radii = windows.radii.empty() ? default_radii(lambda) : windows.radii;
    Json moments = Json::array();
    std::vector<MomentReport> reports;
    for (int k = 0; k <= get_or(cfg, "kmax", 2); ++k) {
        reports.push_back(moment(lambda, k, radii, windows.criteria));
        run.write("moments_k" + std::to_string(k) + ".csv", moment_report_csv(reports.back(), &run.provenance));
        moments.push_back(moment_summary(reports.back()));
    }
    run.summary["moments"] = moments;
    run.summary["atoms"] = lambda.atoms().size();
    run.summary["density_cells"] = lambda.density() ? lambda.density()->size() : 0;

    if (has(cfg, "example1_table")) {
        const auto ex = example1_build(dyadic_sequence, get_or(cfg.at("example1_table"), "cutoff", 20));
        example1_report(run, ex, lambda);
    }
    const Json checks = cfg.value("checks", Json::object());
    if (has(checks, "single_atom")) {
        const auto &expect = checks.at("single_atom");
        const double x = require<double>(expect, "location");
        const auto w = expect.value("weight", Json::array({1.0, 0.0})).get<std::vector<double>>();
        const bool single = lambda.atoms().size() == 1 && !lambda.density();
        const bool ok = single && std::abs(lambda.atoms().front().location - x) <= 1e-12 &&
                        std::abs(lambda.atoms().front().weight - Complex(w.at(0), w.at(1))) <= 1e-12;
        run.check("single atom", ok, single ? "atom at " + brief(lambda.atoms().front().location)
                                           : std::to_string(lambda.atoms().size()) + " atoms");
    }
    if (has(checks, "moments")) {
        for (const auto &m : checks.at("moments")) {
            const int k = require<int>(m, "k");
            if (k < 0 || static_cast<std::size_t>(k) >= reports.size()) {
                throw Error(ErrorCode::InvalidArgument, "moment check order exceeds kmax");
            }
            const Complex expected(get_or(m, "re", 0.0), get_or(m, "im", 0.0));
            const double err = std::abs(reports[static_cast<std::size_t>(k)].value() - expected);
            const double tol = require<double>(m, "tolerance");
            run.check("moment k=" + std::to_string(k), err <= tol, within(err, tol));
        }
    }
}

void cmd_moments(Run &run) {
    const auto &cfg = run.config;
    const auto mu = parse_measure(require<Json>(cfg, "measure"), run.context);
    const auto windows = parse_windows(cfg.value("windows", Json::object()));
    const auto radii = windows.radii.empty() ? default_radii(mu) : windows.radii;
    const auto orders = get_or(cfg, "orders", std::vector<int>{0, 1, 2});
    const Json expect = cfg.value("expect", Json::object());
    Json moments = Json::array();
    for (int k : orders) {
        const auto report = moment(mu, k, radii, windows.criteria);
        run.write("moments_k" + std::to_string(k) + ".csv", moment_report_csv(report, &run.provenance));
        moments.push_back(moment_summary(report));
        const auto key = std::to_string(k);
        if (has(expect, key.c_str())) {
            const auto wanted = expect.at(key).get<std::string>();
            const std::string got(to_string(report.verdict));
            run.check("verdict k=" + key, got == wanted, got + " (expected " + wanted + ")");
        }
    }
    run.summary["moments"] = moments;
}

void cmd_example1(Run &run) {
    const auto ex = example1_build(dyadic_sequence, get_or(run.config, "cutoff", 20));
    const auto lambda = convolve(ex.mu, ex.nu);
    run.write("convolution.json", measure_to_json(lambda, &run.provenance));
    example1_report(run, ex, lambda);
}

void cmd_smear(Run &run) {
    const auto &cfg = run.config;
    const auto a = parse_operator(require<Json>(cfg, "operator"), run.context);
    const auto mu = parse_probability(require<Json>(cfg, "mu"), run.context);
    const auto windows = parse_windows(cfg.value("windows", Json::object()));
    const int kmax = get_or(cfg, "kmax", 4);

    // The closed form needs every moment of mu up to kmax; divergence refuses here.
    std::vector<Operator> binomial;
    for (int k = 0; k <= kmax; ++k) {
        binomial.push_back(moment_operator_binomial(mu, a, k, windows));
    }

    const auto spectral = spectral_measure_of(a);
    std::vector<double> edges;
    if (has(cfg, "edges")) {
        edges = parse_edges(cfg.at("edges"));
    } else {
        if (mu.measure().density()) {
            throw Error(ErrorCode::InvalidArgument, "a smearing measure with a density needs explicit edges");
        }
        std::vector<double> locations;
        for (const auto &x : mu.measure().atoms()) {
            for (double e : spectral.decomposition().eigenvalues) {
                locations.push_back(x.location + e);
            }
        }
        edges = isolating_edges(std::move(locations));
    }
    const auto povm = smear(mu, spectral, std::move(edges));
    if (get_or(cfg, "write_povm", true)) {
        run.write("povm.json", povm_to_json(povm, &run.provenance));
    }

    std::string csv = run.provenance.csv_header() + "k,max_entry_distance\n";
    double worst = 0.0;
    Json distances = Json::array();
    for (int k = 0; k <= kmax; ++k) {
        const double d = max_entry_distance(moment_operator_direct(povm, k).matrix(),
                                            binomial[static_cast<std::size_t>(k)].matrix());
        worst = std::max(worst, d);
        csv += std::to_string(k) + "," + fmt(d) + "\n";
        distances.push_back(d);
    }
    run.write("moment_comparison.csv", csv);
    run.summary["bins"] = povm.bin_count();
    run.summary["distances"] = distances;
    if (has(cfg, "tolerance")) {
        const double tol = cfg.at("tolerance").get<double>();
        run.check("direct vs binomial moment operators", worst <= tol, within(worst, tol));
    }
}

void cmd_phasespace(Run &run) {
    const auto &cfg = run.config;
    const auto n = get_or<Index>(cfg, "N", 40);
    const auto grid = parse_grid(cfg);
    const auto options = parse_phase_space_options(cfg);
    const Json state_spec = cfg.value("state", Json("vacuum"));
    const auto t = parse_state(state_spec, n, run.context);
    const auto rho = parse_state(cfg.value("mass_state", Json("vacuum")), n, run.context);
    const Index block = get_or<Index>(cfg, "block", 0);

    const auto e = build_phase_space_povm(t, grid, options);
    const auto mx = marginal_x(e);
    const auto my = marginal_y(e);
    if (get_or(cfg, "write_povm", false)) {
        write_phase_space_povm(run.out_dir / "povm", e, rho, &run.provenance);
    }
    {
        const auto px = bin_probabilities(mx, rho);
        const auto py = bin_probabilities(my, rho);
        std::string csv = run.provenance.csv_header() + "bin,lower,upper,rep,x_mass,y_mass\n";
        for (std::size_t b = 0; b < px.size(); ++b) {
            csv += std::to_string(b) + "," + fmt(mx.bin_lower(b)) + "," + fmt(mx.bin_upper(b)) + "," +
                   fmt(mx.reps()[b]) + "," + fmt(px[b]) + "," + fmt(py[b]) + "\n";
        }
        run.write("marginals.csv", csv);
    }

    const auto report = marginal_convolution_check(e, t, block);
    {
        std::string csv = run.provenance.csv_header() + "bin,lower,upper,distance,marginal_mass,smeared_mass\n";
        for (std::size_t b = 0; b < report.bin_distance.size(); ++b) {
            csv += std::to_string(b) + "," + fmt(mx.bin_lower(b)) + "," + fmt(mx.bin_upper(b)) + "," +
                   fmt(report.bin_distance[b]) + "," + fmt(report.marginal_mass[b]) + "," +
                   fmt(report.smeared_mass[b]) + "\n";
        }
        run.write("convolution_check.csv", csv);
    }
    run.summary["captured_mass"] = e.captured_mass();
    run.summary["captured_mass_in_state"] = e.captured_mass(rho);
    run.summary["warnings"] = e.warnings();
    run.summary["convolution_check"] = {{"block", report.block},
                                        {"max_distance", report.max_distance},
                                        {"max_distance_full", report.max_distance_full},
                                        {"max_distance_plus", report.max_distance_plus},
                                        {"max_distance_truncated", report.max_distance_truncated},
                                        {"max_mass_difference", report.max_mass_difference}};

    std::optional<MarginalSweep> sweep;
    if (has(cfg, "sweep")) {
        const auto dims = cfg.at("sweep").get<std::vector<Index>>();
        sweep = marginal_convolution_sweep(
            [&](Index d) { return parse_state(state_spec, d, run.context); }, dims, grid, options, block);
        std::string csv = run.provenance.csv_header() +
                          "N,block,max_distance,max_distance_full,max_distance_plus,max_distance_truncated,"
                          "max_mass_difference,captured_mass\n";
        for (const auto &r : sweep->reports) {
            csv += std::to_string(r.dim) + "," + std::to_string(r.block) + "," + fmt(r.max_distance) + "," +
                   fmt(r.max_distance_full) + "," + fmt(r.max_distance_plus) + "," +
                   fmt(r.max_distance_truncated) + "," + fmt(r.max_mass_difference) + "," +
                   fmt(r.captured_mass) + "\n";
        }
        run.write("sweep.csv", csv);
        run.summary["sweep_monotone"] = sweep->monotone;
    }

    const int kmax = get_or(cfg, "kmax", 2);
    const Index moment_block = block > 0 ? std::min(block, n) : n / 2;
    std::string csv = run.provenance.csv_header() +
                      "axis,k,block,distance,expectation_direct,expectation_formula\n";
    std::vector<Operator> direct_x;
    for (const auto &[axis, marginal, quadrature] :
         {std::tuple{"x", &mx, Quadrature::Position}, std::tuple{"y", &my, Quadrature::Momentum}}) {
        for (int k = 0; k <= kmax; ++k) {
            const auto direct = moment_operator_direct(*marginal, k);
            const auto formula = marginal_moment_operator(t, k, quadrature);
            const double d = max_entry_distance(direct.matrix().topLeftCorner(moment_block, moment_block),
                                                formula.matrix().topLeftCorner(moment_block, moment_block));
            csv += std::string(axis) + "," + std::to_string(k) + "," + std::to_string(moment_block) + "," +
                   fmt(d) + "," + fmt(trace_pairing(rho, direct).real()) + "," +
                   fmt(trace_pairing(rho, formula).real()) + "\n";
            if (std::string(axis) == "x") {
                run.write("moment_operator_x_k" + std::to_string(k) + ".json",
                          operator_to_json(direct.matrix(), &run.provenance));
                direct_x.push_back(direct);
            }
        }
    }
    run.write("moments.csv", csv);

    const Json checks = cfg.value("checks", Json::object());
    if (has(checks, "distance")) {
        const double tol = checks.at("distance").get<double>();
        run.check("marginal equals smeared position measure", report.max_distance <= tol,
                  within(report.max_distance, tol) + " on the leading " + std::to_string(report.block) +
                      " levels");
    }
    if (has(checks, "mass")) {
        const double tol = checks.at("mass").get<double>();
        run.check("bin masses agree", report.max_mass_difference <= tol, within(report.max_mass_difference, tol));
    }
    if (has(checks, "monotone") && checks.at("monotone").get<bool>()) {
        if (!sweep) {
            throw Error(ErrorCode::InvalidArgument, "monotone check needs a sweep");
        }
        std::string detail;
        for (const auto &r : sweep->reports) {
            detail += (detail.empty() ? "" : ", ") + std::string("N=") + std::to_string(r.dim) + ": " +
                      brief(r.max_distance);
        }
        run.check("distance non-increasing in N", sweep->monotone, detail);
    }
    if (has(checks, "normal_bins")) {
        const auto &nb = checks.at("normal_bins");
        const double sd = std::sqrt(require<double>(nb, "variance"));
        const double tol = require<double>(nb, "tolerance");
        const auto px = bin_probabilities(mx, rho);
        const auto cdf = [sd](double x) { return 0.5 * std::erfc(-x / (sd * std::sqrt(2.0))); };
        double worst = 0.0;
        for (std::size_t b = 0; b < px.size(); ++b) {
            const double lo = std::isfinite(mx.bin_lower(b)) ? cdf(mx.bin_lower(b)) : 0.0;
            const double hi = std::isfinite(mx.bin_upper(b)) ? cdf(mx.bin_upper(b)) : 1.0;
            worst = std::max(worst, std::abs(px[b] - (hi - lo)));
        }
        run.check("x bin masses follow the normal law", worst <= tol, within(worst, tol));
    }
    if (has(checks, "variance") && kmax >= 2) {
        const auto &v = checks.at("variance");
        const double value = trace_pairing(rho, direct_x[2]).real();
        const double err = std::abs(value - require<double>(v, "value"));
        const double tol = require<double>(v, "tolerance");
        run.check("second marginal moment", err <= tol, brief(value) + ", error " + within(err, tol));
    }
    if (has(checks, "identity")) {
        const double tol = checks.at("identity").get<double>();
        const double d = max_entry_distance(direct_x[0].matrix(), Matrix::Identity(n, n));
        run.check("zeroth moment operator is the identity", d <= tol, within(d, tol));
    }
}

void cmd_sample(Run &run) {
    const auto &cfg = run.config;
    std::string label;
    const Json source = require<Json>(cfg, "source");
    const auto povm = build_source(source, run.context, label);
    const auto rho = parse_state(cfg.value("state", Json("vacuum")), povm.dim(), run.context);
    const auto n = get_or<std::size_t>(cfg, "n", 100000);
    const auto seed = get_or<std::uint64_t>(cfg, "seed", 0);
    const std::string id = label + "-" + sha256_hex(source.dump()).substr(0, 12);

    const auto s = sample(povm, rho, n, seed, id);
    write_sample(run.out_dir / "sample.csv", run.out_dir / "sample.json", s, &run.provenance);

    const auto comparisons = compare_moments(s, povm, rho, get_or(cfg, "kmax", 4));
    std::string csv = run.provenance.csv_header() + "k,empirical,predicted,standard_error,z\n";
    Json rows = Json::array();
    for (const auto &c : comparisons) {
        csv += std::to_string(c.order) + "," + fmt(c.empirical) + "," + fmt(c.predicted) + "," +
               fmt(c.standard_error) + "," + fmt(c.z) + "\n";
        rows.push_back({{"k", c.order},
                        {"empirical", c.empirical},
                        {"predicted", c.predicted},
                        {"standard_error", c.standard_error},
                        {"z", std::isfinite(c.z) ? Json(c.z) : Json(nullptr)}});
    }
    run.write("moment_comparison.csv", csv);
    run.summary["povm_id"] = id;
    run.summary["n"] = n;
    run.summary["moments"] = rows;

    const Json checks = cfg.value("checks", Json::object());
    if (has(checks, "z")) {
        const double threshold = checks.at("z").get<double>();
        for (const auto &c : comparisons) {
            run.check("moment z-score k=" + std::to_string(c.order), std::abs(c.z) < threshold,
                      "z = " + brief(c.z) + " (threshold " + brief(threshold) + ")");
        }
    }
    if (has(checks, "constant")) {
        const double value = checks.at("constant").get<double>();
        const bool all = std::all_of(s.outcomes.begin(), s.outcomes.end(),
                                     [value](double x) { return x == value; });
        run.check("all outcomes equal " + brief(value), all, all ? "yes" : "no");
    }
    if (has(checks, "frequency")) {
        const auto &f = checks.at("frequency");
        const double outcome = require<double>(f, "outcome");
        const double p = require<double>(f, "p");
        const double sigmas = get_or(f, "sigmas", 5.0);
        const auto hits = std::count(s.outcomes.begin(), s.outcomes.end(), outcome);
        const double freq = static_cast<double>(hits) / static_cast<double>(n);
        const double bound = sigmas * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        run.check("frequency of " + brief(outcome), std::abs(freq - p) <= bound,
                  brief(freq) + " vs " + brief(p) + " (bound " + brief(bound) + ")");
    }
}

} // namespace smearlab::cli
