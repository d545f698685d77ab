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
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "smearlab/example1.hpp"
#include "support.hpp"

using namespace smearlab;
using namespace smearlab::testing;
using Catch::Matchers::WithinAbs;

TEST_CASE("example1_build with a two-term sequence", "[example1]") {
    const auto ex = example1_build([](int k) { return k == 0 ? 0.5 : 0.25; }, 1);

    const std::vector<double> expected{0.5, 0.5, 0.25, 0.25};
    REQUIRE(ex.mu.atoms().size() == expected.size());
    for (std::size_t n = 0; n < expected.size(); ++n) {
        CHECK(ex.mu.atoms()[n].location == static_cast<double>(n));
        CHECK(ex.mu.atoms()[n].weight == Complex(expected[n]));
    }
    CHECK(ex.nu.atom_weight_at(-1.0) == Complex(-0.5));
    CHECK(ex.nu.atom_weight_at(-2.0) == Complex(0.25));
    CHECK(ex.nu.atom_weight_at(1.0) == Complex(0.0));

    SECTION("c_0 is twice the sum of squared terms") {
        CHECK(ex.slice_constant(0) == 2.0 * (0.25 + 0.0625));
    }
}

TEST_CASE("example1_build rejects bad input", "[example1]") {
    CHECK_THROWS_AS(example1_build(dyadic_sequence, 0), Error);
    CHECK_THROWS_AS(example1_build([](int k) { return k == 3 ? 0.0 : 1.0; }, 5), Error);
    CHECK_THROWS_AS(example1_build([](int) { return -1.0; }, 2), Error);
}

TEST_CASE("example1 convolution vanishes on even integers", "[example1]") {
    for (const int cutoff : {1, 5, 20}) {
        const auto ex = example1_build(dyadic_sequence, cutoff);
        const auto lambda = convolve(ex.mu, ex.nu);
        const long top = ex.support_bound();
        for (long n = -top; n <= top; ++n) {
            if (n % 2 == 0) {
                INFO("cutoff " << cutoff << " n " << n);
                CHECK(std::abs(lambda.atom_weight_at(static_cast<double>(n))) <= 1e-12);
            }
        }
        // Odd sites carry mass, so the vanishing is not a triviality.
        CHECK(std::abs(lambda.atom_weight_at(1.0)) > 0.1);

        const auto value = integrate([&](double x) { return Complex(ex.f(x)); }, lambda);
        CHECK(std::abs(value) <= 1e-10);
    }
}

TEST_CASE("example1 slices each carry unit absolute integral", "[example1]") {
    const auto ex = example1_build(dyadic_sequence, 20);
    for (long n = -2L * ex.cutoff; n <= 2L * ex.cutoff; n += 2) {
        INFO("n " << n);
        CHECK_THAT(example1_slice_absolute_integral(ex, n), WithinAbs(1.0, 1e-9));
    }
    CHECK_THAT(example1_slice_absolute_integral(ex, 0), WithinAbs(1.0, 1e-12));
    CHECK_THAT(example1_slice_absolute_integral(ex, 2), WithinAbs(1.0, 1e-12));
    CHECK_THROWS_AS(example1_slice_absolute_integral(ex, 1), Error);

    SECTION("c_n by independent double summation over atoms") {
        for (long n = -4; n <= 4; ++n) {
            double oracle = 0.0;
            for (const auto &x : ex.mu.atoms()) {
                for (const auto &y : ex.nu.atoms()) {
                    if (x.location + y.location == static_cast<double>(n)) {
                        oracle += std::abs(x.weight * y.weight);
                    }
                }
            }
            CHECK_THAT(ex.slice_constant(n), WithinAbs(oracle, 1e-15));
        }
    }

    SECTION("c_0 is twice the sum of squared terms") {
        double oracle = 0.0;
        for (int k = 0; k <= 20; ++k) {
            oracle += 2.0 * dyadic_sequence(k) * dyadic_sequence(k);
        }
        CHECK_THAT(ex.slice_constant(0), WithinAbs(oracle, 1e-15));
    }
}

TEST_CASE("f vanishes off the even integers", "[example1]") {
    const auto ex = example1_build(dyadic_sequence, 3);
    CHECK(ex.f(1.0) == 0.0);
    CHECK(ex.f(0.5) == 0.0);
    CHECK(ex.f(2.0) > 0.0);
    CHECK(ex.f(100.0) == 0.0);
}
