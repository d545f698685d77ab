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

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "smearlab/example1.hpp"
#include "smearlab/measure.hpp"
#include "support.hpp"

using namespace smearlab;
using namespace smearlab::testing;
using Catch::Matchers::WithinAbs;

namespace {

ScalarMeasure measure_with_density(Rng &rng, double step) {
    // Atoms sit on cell midpoints so every cross term shares one lattice.
    auto atoms = random_lattice_atoms(6, 2, rng);
    for (auto &a : atoms) {
        a.location += step / 2.0;
    }
    GridDensity d;
    d.origin = -1.0;
    d.step = step;
    for (int i = 0; i < 40; ++i) {
        d.values.push_back(unit_disc(rng));
    }
    return ScalarMeasure(std::move(atoms), std::move(d));
}

double density_second_moment(const GridDensity &d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double x = d.origin + (static_cast<double>(i) + 0.5) * d.step;
        s += d.step * x * x * d.values[i].real();
    }
    return s;
}

} // namespace

TEST_CASE("ScalarMeasure validates its representation", "[measure]") {
    SECTION("unsorted or duplicate atoms are rejected") {
        REQUIRE_THROWS_AS(ScalarMeasure({{1.0, 1.0}, {0.0, 1.0}}), Error);
        REQUIRE_THROWS_AS(ScalarMeasure({{0.0, 1.0}, {0.0, 1.0}}), Error);
    }
    SECTION("non-finite data is rejected") {
        REQUIRE_THROWS_AS(ScalarMeasure({{std::nan(""), 1.0}}), Error);
        REQUIRE_THROWS_AS(ScalarMeasure({{0.0, std::numeric_limits<double>::infinity()}}), Error);
    }
    SECTION("density step must be positive") {
        REQUIRE_THROWS_AS(ScalarMeasure({}, GridDensity{0.0, 0.0, {1.0}}), Error);
        REQUIRE_THROWS_AS(ScalarMeasure({}, GridDensity{0.0, -0.1, {1.0}}), Error);
    }
    SECTION("from_unsorted_atoms sorts and merges within tolerance") {
        const auto mu = ScalarMeasure::from_unsorted_atoms({{2.0, 1.0}, {0.0, 0.5}, {2.0 + 1e-14, 0.25}});
        REQUIRE(mu.atoms().size() == 2);
        CHECK(mu.atoms()[0].location == 0.0);
        CHECK(std::abs(mu.atoms()[1].weight - Complex(1.25)) < 1e-15);
    }
}

TEST_CASE("ProbabilityMeasure enforces positivity and unit mass", "[measure]") {
    REQUIRE_THROWS_AS(ProbabilityMeasure(ScalarMeasure({{0.0, 0.5}, {1.0, 0.4}})), Error);
    REQUIRE_THROWS_AS(ProbabilityMeasure(ScalarMeasure({{0.0, -0.5}, {1.0, 1.5}})), Error);
    REQUIRE_THROWS_AS(ProbabilityMeasure(ScalarMeasure({{0.0, Complex(1.0, 0.1)}})), Error);

    const ProbabilityMeasure p(ScalarMeasure({{-1.0, 0.25}, {2.0, 0.75}}));
    CHECK(p.cdf(-1.5) == 0.0);
    CHECK(p.cdf(-1.0) == 0.25);
    CHECK(p.cdf(3.0) == 1.0);

    const auto u = uniform_density(0.0, 1.0, 0.01);
    CHECK_THAT(u.cdf(0.5), WithinAbs(0.5, 1e-12));
    CHECK_THAT(u.cdf(0.255), WithinAbs(0.255, 1e-12));
}

TEST_CASE("total_variation", "[measure]") {
    CHECK(total_variation(ScalarMeasure::point_mass(0.0)) == 1.0);
    CHECK(total_variation(ScalarMeasure({{0.0, 1.0}, {1.0, -1.0}})) == 2.0);

    SECTION("example1 nu with dyadic weights and cutoff 20") {
        const auto ex = example1_build(dyadic_sequence, 20);
        double oracle = 0.0;
        for (int k = 0; k <= 20; ++k) {
            oracle += 2.0 * std::ldexp(1.0, -k - 1);
        }
        CHECK_THAT(total_variation(ex.nu), WithinAbs(oracle, 1e-15));
        CHECK_THAT(total_variation(ex.nu), WithinAbs(2.0, 1e-5));
    }

    SECTION("density cells count with their step") {
        const ScalarMeasure mu({{0.0, Complex(0.0, 2.0)}}, GridDensity{0.0, 0.5, {1.0, -3.0}});
        CHECK_THAT(total_variation(mu), WithinAbs(2.0 + 0.5 * 4.0, 1e-15));
    }
}

TEST_CASE("convolve", "[measure][convolve]") {
    SECTION("point masses translate") {
        const auto lambda = convolve(ScalarMeasure::point_mass(1.5), ScalarMeasure::point_mass(-4.0));
        REQUIRE(lambda.atoms().size() == 1);
        CHECK(lambda.atoms()[0].location == -2.5);
        CHECK(lambda.atoms()[0].weight == Complex(1.0));
        CHECK_FALSE(lambda.density().has_value());
    }

    SECTION("Gaussian densities add variances") {
        const auto g1 = gaussian_density(0.0, 1.0, -12.0, 12.0, 0.01);
        const auto g2 = gaussian_density(0.0, 2.0, -12.0, 12.0, 0.01);
        const auto lambda = convolve(g1, g2);
        REQUIRE(lambda.density().has_value());
        CHECK_THAT(density_second_moment(*lambda.density()), WithinAbs(3.0, 1e-3));
        const auto report = moment(lambda, 2, default_radii(lambda));
        CHECK(report.verdict == MomentVerdict::Converged);
        CHECK_THAT(report.value().real(), WithinAbs(3.0, 1e-3));
    }

    SECTION("an atom shifts a density along its own lattice") {
        const ScalarMeasure d({}, GridDensity{0.0, 0.25, {1.0, 2.0, 3.0}});
        const auto shifted = convolve(ScalarMeasure::point_mass(0.5, 2.0), d);
        REQUIRE(shifted.density().has_value());
        CHECK_THAT(shifted.density()->origin, WithinAbs(0.5, 1e-15));
        CHECK(shifted.density()->values[1] == Complex(4.0));
    }

    SECTION("incompatible grids are refused") {
        const ScalarMeasure a({}, GridDensity{0.0, 0.1, {1.0}});
        const ScalarMeasure b({}, GridDensity{0.0, 0.2, {1.0}});
        try {
            (void)convolve(a, b);
            FAIL("expected GridIncompatible");
        } catch (const Error &e) {
            CHECK(e.code() == ErrorCode::GridIncompatible);
        }
        const ScalarMeasure c({{0.03, 1.0}}, GridDensity{0.0, 0.1, {1.0}});
        CHECK_THROWS_AS(convolve(c, a), Error);
    }

    SECTION("result grid above the configured maximum is refused") {
        const auto u = uniform_density(0.0, 1.0, 0.001);
        ConvolutionOptions options;
        options.max_grid_cells = 1000;
        try {
            (void)convolve(u, u, options);
            FAIL("expected GridOverflow");
        } catch (const Error &e) {
            CHECK(e.code() == ErrorCode::GridOverflow);
        }
    }

    SECTION("total variation is submultiplicative") {
        Rng rng(11);
        for (int trial = 0; trial < 25; ++trial) {
            const auto a = measure_with_density(rng, 0.125);
            const auto b = measure_with_density(rng, 0.125);
            CHECK(total_variation(convolve(a, b)) <= total_variation(a) * total_variation(b) + 1e-9);
        }
    }
}

TEST_CASE("convolve commutes and multiplies masses", "[measure][convolve][property]") {
    Rng rng(2026);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = measure_with_density(rng, 0.125);
        const auto b = measure_with_density(rng, 0.125);
        const auto ab = convolve(a, b);
        const auto ba = convolve(b, a);

        REQUIRE(ab.atoms().size() == ba.atoms().size());
        for (std::size_t i = 0; i < ab.atoms().size(); ++i) {
            CHECK(std::abs(ab.atoms()[i].location - ba.atoms()[i].location) <= 1e-12);
            CHECK(std::abs(ab.atoms()[i].weight - ba.atoms()[i].weight) <= 1e-12);
        }
        REQUIRE(ab.density()->size() == ba.density()->size());
        CHECK(std::abs(ab.density()->origin - ba.density()->origin) <= 1e-12);
        for (std::size_t i = 0; i < ab.density()->size(); ++i) {
            CHECK(std::abs(ab.density()->values[i] - ba.density()->values[i]) <= 1e-12);
        }
        CHECK(std::abs(ab.total_mass() - a.total_mass() * b.total_mass()) <= 1e-12);
    }
}

TEST_CASE("moment of a convolution matches the binomial formula", "[measure][property]") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> count(1, 50);
        const auto xa = random_lattice_atoms(count(rng), 4, rng);
        const auto xb = random_lattice_atoms(count(rng), 4, rng);
        const ScalarMeasure a(xa);
        const ScalarMeasure b(xb);
        const auto lambda = convolve(a, b);

        std::vector<Atom> oracle_atoms;
        for (const auto &[x, w] : brute_force_convolution(xa, xb)) {
            oracle_atoms.push_back({x, w});
        }
        for (int k = 0; k <= 6; ++k) {
            const auto direct = moment(lambda, k, default_radii(lambda)).value();
            const auto binomial = binomial_convolution_moment(a, b, k);
            const auto oracle = atom_moment(oracle_atoms, k);
            INFO("trial " << trial << " k " << k);
            CHECK(relative_error(direct, binomial) <= 1e-9);
            CHECK(relative_error(direct, oracle) <= 1e-9);
        }
    }
}

TEST_CASE("integration against a convolution equals the product-measure sum", "[measure][property]") {
    Rng rng(99);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 100; ++trial) {
        const auto xa = random_lattice_atoms(20, 2, rng);
        const auto xb = random_lattice_atoms(20, 2, rng);
        std::vector<Complex> coeffs(7);
        for (auto &c : coeffs) {
            c = {normal(rng), normal(rng)};
        }
        const auto f = [&](double x) {
            Complex s = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
                s = s * x + *it;
            }
            return s;
        };
        Complex oracle = 0.0;
        for (const auto &x : xa) {
            for (const auto &y : xb) {
                oracle += f(x.location + y.location) * x.weight * y.weight;
            }
        }
        const auto value = integrate(f, convolve(ScalarMeasure(xa), ScalarMeasure(xb)));
        CHECK(relative_error(value, oracle) <= 1e-9);
    }
}

TEST_CASE("windowed moments", "[measure][moment]") {
    SECTION("point mass") {
        const auto r = moment(ScalarMeasure::point_mass(2.5), 1, default_radii(ScalarMeasure::point_mass(2.5)));
        CHECK(r.value() == Complex(2.5));
        CHECK(r.verdict == MomentVerdict::Converged);
    }

    SECTION("standard Gaussian second moment") {
        const auto g = gaussian_density(0.0, 1.0, -12.0, 12.0, 0.01);
        const auto r = moment(g, 2, default_radii(g));
        CHECK_THAT(r.value().real(), WithinAbs(1.0, 1e-3));
        CHECK(r.verdict == MomentVerdict::Converged);
    }

    SECTION("cubic tail: second moment diverges, first converges") {
        const auto tail = power_tail_density(3.0, 1e4, 0.5);
        const std::vector<double> radii{1e2, 1e3, 1e4};
        const auto k2 = moment(tail, 2, radii, ConvergenceCriteria::tail_diagnostic());
        const auto k1 = moment(tail, 1, radii, ConvergenceCriteria::tail_diagnostic());
        CHECK(k2.verdict == MomentVerdict::Diverging);
        CHECK(k1.verdict == MomentVerdict::Converged);
        CHECK_THAT(k1.value().real(), WithinAbs(0.0, 1e-9));
        // Closed form: 2 int_0^R x (1+x)^-3 dx = 1 - (2R+1)/(1+R)^2, over a
        // normalisation of 1 - (1+R)^-2. Midpoint error is O(h^2) at the kink.
        const double r = 1e4;
        const double expected = (1.0 - (2.0 * r + 1.0) / ((1.0 + r) * (1.0 + r))) / (1.0 - 1.0 / ((1.0 + r) * (1.0 + r)));
        const auto fine = power_tail_density(3.0, r, 0.01);
        CHECK_THAT(moment(fine, 1, radii).windows.back().partial_absolute, WithinAbs(expected, 1e-4));
    }

    SECTION("growth below the threshold stays undetermined") {
        const auto tail = power_tail_density(3.0, 1e4, 0.5);
        const auto r = moment(tail, 1, {1e2, 1e3, 1e4});
        CHECK(r.verdict == MomentVerdict::Undetermined);
    }

    SECTION("partial absolute moments never decrease") {
        Rng rng(5);
        for (int trial = 0; trial < 40; ++trial) {
            const auto mu = measure_with_density(rng, 0.125);
            std::vector<double> radii;
            for (int i = 1; i <= 12; ++i) {
                radii.push_back(0.3 * i);
            }
            for (int k = 0; k <= 4; ++k) {
                const auto r = moment(mu, k, radii);
                for (std::size_t i = 1; i < r.windows.size(); ++i) {
                    CHECK(r.windows[i].partial_absolute >= r.windows[i - 1].partial_absolute);
                }
            }
        }
    }
}

TEST_CASE("binomial_convolution_moment", "[measure][moment]") {
    SECTION("point masses expand binomially") {
        const auto v = binomial_convolution_moment(ScalarMeasure::point_mass(1.25),
                                                   ScalarMeasure::point_mass(-3.0), 2);
        CHECK_THAT(v.real(), WithinAbs((1.25 - 3.0) * (1.25 - 3.0), 1e-14));
    }

    SECTION("means of uniform densities add") {
        const auto u = uniform_density(0.0, 1.0, 0.01);
        const auto oracle = moment(convolve(u, u), 1, {3.0, 6.0}).value();
        const auto v = binomial_convolution_moment(u, u, 1);
        CHECK_THAT(v.real(), WithinAbs(1.0, 1e-12));
        CHECK_THAT(v.real(), WithinAbs(oracle.real(), 1e-12));
    }

    SECTION("example1 total masses multiply to zero") {
        const auto ex = example1_build(dyadic_sequence, 20);
        double mu_mass = 0.0;
        double nu_mass = 0.0;
        for (long n = 0; n <= ex.support_bound(); ++n) {
            mu_mass += ex.b_at(n);
            nu_mass += (n % 2 == 0 ? 1.0 : -1.0) * ex.b_at(n);
        }
        const auto v = binomial_convolution_moment(ex.mu, ex.nu, 0);
        CHECK_THAT(std::abs(v), WithinAbs(std::abs(mu_mass * nu_mass), 1e-15));
        CHECK(std::abs(v) == 0.0);
    }

    SECTION("a divergent input moment is refused with its report") {
        const auto tail = power_tail_density(3.0, 1e4, 0.5);
        MomentWindows windows{{1e2, 1e3, 1e4}, ConvergenceCriteria::tail_diagnostic()};
        try {
            (void)binomial_convolution_moment(tail, ScalarMeasure::point_mass(0.0), 2, windows);
            FAIL("expected NonconvergedMoment");
        } catch (const NonconvergedMoment &e) {
            CHECK(e.code() == ErrorCode::Nonconverged);
            CHECK(e.report().order == 2);
            CHECK(e.report().verdict == MomentVerdict::Diverging);
        }
        CHECK_NOTHROW(binomial_convolution_moment(tail, ScalarMeasure::point_mass(0.0), 1, windows));
    }
}

TEST_CASE("integrate", "[measure]") {
    CHECK_THAT(integrate([](double) { return Complex(1.0); }, gaussian_density(0.0, 1.0, -8.0, 8.0, 0.05)).real(),
               WithinAbs(1.0, 1e-12));
    CHECK(integrate([](double x) { return Complex(x * x); }, ScalarMeasure::point_mass(3.0)) == Complex(9.0));
    CHECK_THROWS_AS(integrate([](double x) { return Complex(1.0 / x); }, ScalarMeasure::point_mass(0.0)), Error);
}

TEST_CASE("interval masses use half-open intervals", "[measure]") {
    const ScalarMeasure mu({{0.0, 1.0}, {1.0, 2.0}}, GridDensity{2.0, 1.0, {4.0, 8.0}});
    CHECK(mu.interval_mass(-1.0, 0.0) == Complex(1.0));
    CHECK(mu.interval_mass(0.0, 1.0) == Complex(2.0));
    CHECK_THAT(mu.interval_mass(2.5, 3.5).real(), WithinAbs(2.0 + 4.0, 1e-12));
    CHECK(mu.atom_weight_at(1.0) == Complex(2.0));
    CHECK(mu.atom_weight_at(0.5) == Complex(0.0));
}
