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
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "smearlab/random_instances.hpp"
#include "smearlab/semispectral.hpp"
#include "support.hpp"

using namespace smearlab;
using namespace smearlab::testing;
using Catch::Matchers::WithinAbs;

namespace {

Vector random_vector(Index n, Rng &rng) {
    std::normal_distribution<double> g;
    Vector v(n);
    for (Index i = 0; i < n; ++i) {
        v(i) = {g(rng), g(rng)};
    }
    return v;
}

/// Brute-force smearing of a spectral measure: every (mu atom, eigenvalue)
/// pair lands in the bin of its sum.
std::vector<Matrix> brute_force_smear(const ProbabilityMeasure &mu, const SpectralMeasureFD &e,
                                      const std::vector<double> &edges) {
    const Index n = e.dim();
    std::vector<Matrix> out(edges.size() + 1, Matrix::Zero(n, n));
    const auto &d = e.decomposition();
    for (const auto &m : mu.measure().atoms()) {
        for (std::size_t j = 0; j < d.eigenvalues.size(); ++j) {
            const double x = m.location + d.eigenvalues[j];
            std::size_t bin = 0;
            while (bin < edges.size() && x > edges[bin]) {
                ++bin;
            }
            out[bin] += m.weight.real() * d.projections[j];
        }
    }
    return out;
}

Matrix direct_power_sum(const HermitianOperator &a, int k) {
    Matrix out = Matrix::Identity(a.dim(), a.dim());
    for (int i = 0; i < k; ++i) {
        out = out * a.matrix();
    }
    return out;
}

} // namespace

TEST_CASE("spectral_measure_of", "[semispectral]") {
    const auto e = spectral_measure_of(HermitianOperator::diagonal({0.0, 1.0}));
    const auto atoms = e.atoms();
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0].location == 0.0);
    CHECK(atoms[1].location == 1.0);
    CHECK_THAT(atoms[0].effect.trace().real(), WithinAbs(1.0, 1e-14));

    const auto id = spectral_measure_of(HermitianOperator(Matrix::Identity(4, 4)));
    REQUIRE(id.atoms().size() == 1);
    CHECK_THAT(id.atoms()[0].location, WithinAbs(1.0, 1e-14));

    Rng rng(21);
    const auto r = spectral_measure_of(random_hermitian(9, rng));
    Matrix sum = Matrix::Zero(9, 9);
    for (const auto &a : r.atoms()) {
        sum += a.effect;
    }
    CHECK(max_entry_distance(sum, Matrix::Identity(9, 9)) < 1e-10);
}

TEST_CASE("bilinear_measure", "[semispectral]") {
    const auto e = spectral_measure_of(HermitianOperator::diagonal({0.0, 1.0}));
    Vector e0(2);
    e0 << 1.0, 0.0;
    const auto delta = bilinear_measure(e, e0, e0);
    CHECK(delta.atom_weight_at(0.0) == Complex(1.0));
    CHECK(std::abs(delta.atom_weight_at(1.0)) == 0.0);

    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const auto half = bilinear_measure(e, plus, plus);
    CHECK_THAT(half.atom_weight_at(0.0).real(), WithinAbs(0.5, 1e-15));
    CHECK_THAT(half.atom_weight_at(1.0).real(), WithinAbs(0.5, 1e-15));

    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = spectral_measure_of(random_hermitian(8, rng));
        const Vector psi = random_vector(8, rng);
        const Vector phi = random_vector(8, rng);
        CHECK(std::abs(bilinear_measure(a, psi, phi).total_mass() - psi.dot(phi)) < 1e-10);
        const auto diag = bilinear_measure(a, phi, phi);
        for (const auto &atom : diag.atoms()) {
            CHECK(atom.weight.real() >= -1e-12);
            CHECK(std::abs(atom.weight.imag()) < 1e-12);
        }
        CHECK_THAT(diag.total_mass().real(), WithinAbs(phi.squaredNorm(), 1e-10));
    }

    CHECK_THROWS_AS(bilinear_measure(e, Vector::Zero(3), Vector::Zero(3)), Error);
}

TEST_CASE("DiscretizedPOVM validates its effects", "[semispectral]") {
    const Matrix half = 0.5 * Matrix::Identity(2, 2);
    CHECK_NOTHROW(DiscretizedPOVM({0.0}, {half, half}, {0.0, 0.0}));
    CHECK_THROWS_AS(DiscretizedPOVM({0.0}, {half, half * 1.1}, {0.0, 0.0}), Error);
    CHECK_THROWS_AS(DiscretizedPOVM({0.0}, {half}, {0.0}), Error);
    CHECK_THROWS_AS(DiscretizedPOVM({1.0, 0.0}, {half, half, Matrix::Zero(2, 2)}, {0.0, 0.0, 0.0}), Error);
    Matrix neg = Matrix::Identity(2, 2);
    neg(0, 0) = -0.1;
    Matrix rest = Matrix::Identity(2, 2) - neg;
    CHECK_THROWS_AS(DiscretizedPOVM({0.0}, {neg, rest}, {0.0, 0.0}), Error);

    const DiscretizedPOVM ok({0.0, 1.0}, {half, half, Matrix::Zero(2, 2)}, {0.0, 0.5, 1.0});
    CHECK(ok.bin_of(0.0) == 0);
    CHECK(ok.bin_of(0.5) == 1);
    CHECK(ok.bin_of(1.0) == 1);
    CHECK(ok.bin_of(1.5) == 2);
}

TEST_CASE("smear", "[semispectral][smear]") {
    const auto a = HermitianOperator::diagonal({0.0, 1.0});
    const auto e = spectral_measure_of(a);

    SECTION("point mass at zero bins the spectral projections") {
        const auto binned = smear(ProbabilityMeasure(ScalarMeasure::point_mass(0.0)), e, {-0.5, 0.5, 1.5});
        REQUIRE(binned.bin_count() == 4);
        CHECK(binned.effects()[0].isZero());
        CHECK(max_entry_distance(binned.effects()[1], e.atoms()[0].effect) < 1e-15);
        CHECK(max_entry_distance(binned.effects()[2], e.atoms()[1].effect) < 1e-15);
        CHECK(binned.effects()[3].isZero());
        CHECK(binned.reps()[1] == 0.0);
        CHECK(binned.reps()[2] == 1.0);
    }

    SECTION("point mass at c translates") {
        const auto shifted = smear(ProbabilityMeasure(ScalarMeasure::point_mass(3.0)), e, {2.5, 3.5, 4.5});
        CHECK(max_entry_distance(shifted.effects()[1], e.atoms()[0].effect) < 1e-15);
        CHECK(shifted.reps()[1] == 3.0);
        CHECK(shifted.reps()[2] == 4.0);
    }

    SECTION("two-point smearing table against brute force") {
        const ProbabilityMeasure mu(ScalarMeasure({{-1.0, 0.5}, {1.0, 0.5}}));
        const std::vector<double> edges{-0.5, 0.5, 1.5};
        const auto smeared = smear(mu, e, edges);
        const auto oracle = brute_force_smear(mu, e, edges);
        for (std::size_t b = 0; b < oracle.size(); ++b) {
            CHECK(max_entry_distance(smeared.effects()[b], oracle[b]) < 1e-15);
        }
        CHECK_THAT(smeared.effects()[1](1, 1).real(), WithinAbs(0.5, 1e-15));
        CHECK_THAT(smeared.effects()[1](0, 0).real(), WithinAbs(0.0, 1e-15));
    }

    SECTION("density tails land in the outer bins") {
        const auto g = gaussian_density(0.0, 1.0, -8.0, 8.0, 0.01);
        const auto smeared = smear(g, e, {-1.0, 0.0, 1.0, 2.0});
        CHECK(max_entry_distance(smeared.total(), Matrix::Identity(2, 2)) < 1e-12);
        CHECK_THAT(smeared.effects()[0](0, 0).real(), WithinAbs(normal_cdf(-1.0, 0.0, 1.0), 1e-4));
        CHECK(smeared.reps().front() == -1.0);
        CHECK(smeared.reps().back() == 2.0);
        CHECK(smeared.reps()[1] == -0.5);
    }

    SECTION("smeared effects stay positive") {
        Rng rng(31);
        for (int trial = 0; trial < 30; ++trial) {
            const auto h = random_hermitian(6, rng);
            const auto mu = random_probability_measure(12, 2.0, rng);
            std::vector<double> edges;
            for (int i = -10; i <= 10; ++i) {
                edges.push_back(0.7 * i);
            }
            const auto smeared = smear(mu, spectral_measure_of(h), edges);
            for (const auto &m : smeared.effects()) {
                CHECK(min_hermitian_eigenvalue(m) >= -1e-9);
            }
            CHECK(max_entry_distance(smeared.total(), Matrix::Identity(6, 6)) < 1e-8);
        }
    }
}

TEST_CASE("bilinear measure of a smearing is the convolved bilinear measure", "[semispectral][property]") {
    Rng rng(32);
    for (int trial = 0; trial < 30; ++trial) {
        const auto h = random_hermitian(5, rng);
        const auto e = spectral_measure_of(h);
        const auto mu = random_probability_measure(10, 3.0, rng);
        const Vector psi = random_vector(5, rng);
        const Vector phi = random_vector(5, rng);

        const auto lhs_scalar = convolve(mu.measure(), bilinear_measure(e, psi, phi));
        std::vector<double> locations;
        for (const auto &a : lhs_scalar.atoms()) {
            locations.push_back(a.location);
        }
        const auto smeared = smear(mu, e, isolating_edges(locations));
        const auto rhs_scalar = bilinear_measure(smeared, psi, phi);
        for (const auto &a : lhs_scalar.atoms()) {
            CHECK(std::abs(rhs_scalar.atom_weight_at(a.location) - a.weight) < 1e-10);
        }
    }
}

TEST_CASE("moment operators", "[semispectral][moment]") {
    Rng rng(41);
    const auto a = random_hermitian(6, rng);
    const auto e = spectral_measure_of(a);
    std::vector<double> eig;
    for (const auto &atom : e.atoms()) {
        eig.push_back(atom.location);
    }
    const auto binned = bin_measure(AtomicPOVM(e), isolating_edges(eig));

    CHECK(max_entry_distance(moment_operator_direct(binned, 0).matrix(), Matrix::Identity(6, 6)) < 1e-8);
    CHECK(max_entry_distance(moment_operator_direct(binned, 1).matrix(), a.matrix()) < 1e-10);
    CHECK(max_entry_distance(moment_operator_direct(binned, 2).matrix(), a.matrix() * a.matrix()) < 1e-10);

    SECTION("binomial formula special cases") {
        const ProbabilityMeasure zero(ScalarMeasure::point_mass(0.0));
        for (int k = 0; k <= 4; ++k) {
            CHECK(max_entry_distance(moment_operator_binomial(zero, a, k).matrix(), direct_power_sum(a, k)) < 1e-10);
        }
        const ProbabilityMeasure mu(ScalarMeasure({{-0.5, 0.25}, {2.0, 0.75}}));
        const Matrix expected = a.matrix() + (0.25 * -0.5 + 0.75 * 2.0) * Matrix::Identity(6, 6);
        CHECK(max_entry_distance(moment_operator_binomial(mu, a, 1).matrix(), expected) < 1e-12);
    }

    SECTION("Gaussian smearing with mean 1 and variance 2") {
        const auto g = gaussian_density(1.0, 2.0, -14.0, 16.0, 0.01);
        const auto d = HermitianOperator::diagonal({0.0, 1.0});
        const Matrix expected = d.matrix() * d.matrix() + 2.0 * d.matrix() + 3.0 * Matrix::Identity(2, 2);
        CHECK(max_entry_distance(moment_operator_binomial(g, d, 2).matrix(), expected) < 1e-3);
    }

    SECTION("direct and binomial agree when every smeared atom sits alone") {
        Rng local(42);
        for (int trial = 0; trial < 40; ++trial) {
            std::uniform_int_distribution<Index> dim(1, 16);
            std::uniform_int_distribution<std::size_t> count(1, 30);
            std::uniform_int_distribution<int> order(0, 5);
            const auto h = random_hermitian(dim(local), local);
            const auto mu = random_probability_measure(count(local), 2.0, local);
            const int k = order(local);
            const auto spectral = spectral_measure_of(h);
            std::vector<double> sums;
            for (const auto &m : mu.measure().atoms()) {
                for (const auto &s : spectral.atoms()) {
                    sums.push_back(m.location + s.location);
                }
            }
            const auto smeared = smear(mu, spectral, isolating_edges(sums));
            CHECK(max_entry_distance(moment_operator_direct(smeared, k).matrix(),
                                     moment_operator_binomial(mu, h, k).matrix()) <= 1e-8);
        }
    }

    SECTION("heavy tail: first order exists while second order diverges") {
        const auto tail = power_tail_density(3.0, 1e6, 1.0);
        const auto d = HermitianOperator::diagonal({0.0, 1.0});
        const MomentWindows windows{{1e2, 1e3, 1e4, 1e5, 1e6}, ConvergenceCriteria::tail_diagnostic()};
        CHECK_NOTHROW(moment_operator_binomial(tail, d, 1, windows));
        CHECK(moment(tail, 2, windows.radii, windows.criteria).verdict == MomentVerdict::Diverging);
        CHECK_THROWS_AS(moment_operator_binomial(tail, d, 2, windows), NonconvergedMoment);
    }
}

TEST_CASE("state_distribution and trace moments", "[semispectral]") {
    const auto delta = state_distribution(DensityOperator::basis_state(2, 0), HermitianOperator::diagonal({3.0, 5.0}));
    CHECK_THAT(delta.measure().atom_weight_at(3.0).real(), WithinAbs(1.0, 1e-15));
    CHECK_THAT(delta.measure().atom_weight_at(5.0).real(), WithinAbs(0.0, 1e-15));

    const auto half = state_distribution(DensityOperator::maximally_mixed(2), HermitianOperator::diagonal({0.0, 1.0}));
    CHECK_THAT(half.measure().atom_weight_at(0.0).real(), WithinAbs(0.5, 1e-15));
    CHECK_THAT(half.measure().atom_weight_at(1.0).real(), WithinAbs(0.5, 1e-15));

    Rng rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        const auto t = random_density(8, 3, rng);
        const auto h = random_hermitian(8, rng);
        const auto p = state_distribution(t, h);
        const auto mean = integrate([](double x) { return Complex(x); }, p.measure());
        CHECK(std::abs(mean - (h.matrix() * t.matrix()).trace()) < 1e-10);
        CHECK_THAT(trace_moment(t, h, 0), WithinAbs(1.0, 1e-12));
        for (int m = 1; m <= 4; ++m) {
            const auto windowed = moment(p.measure(), m, default_radii(p.measure())).value().real();
            CHECK(std::abs(trace_moment(t, h, m) - windowed) <= 1e-9 * std::max(1.0, std::abs(windowed)));
        }
    }
    const auto h = random_hermitian(5, rng);
    CHECK_THAT(trace_moment(DensityOperator::maximally_mixed(5), h, 1), WithinAbs(h.matrix().trace().real() / 5.0, 1e-12));
}

TEST_CASE("Hilbert-Schmidt diagnostic", "[semispectral]") {
    Rng rng(61);
    const auto t = random_density(4, 4, rng);
    const auto h = random_hermitian(4, rng);
    const auto zero = hs_moment_diagnostic(t, h, 0);
    CHECK_THAT(zero.hs, WithinAbs(1.0, 1e-12));
    CHECK_THAT(zero.moment, WithinAbs(1.0, 1e-12));

    const auto eig = hs_moment_diagnostic(DensityOperator::basis_state(2, 0), HermitianOperator::diagonal({-2.0, 1.0}), 2);
    CHECK_THAT(eig.hs, WithinAbs(4.0, 1e-12));
    CHECK_THAT(eig.moment, WithinAbs(4.0, 1e-12));

    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<Index> dim(1, 32);
        const Index n = dim(rng);
        const auto tt = random_density(n, std::max<Index>(1, n / 2), rng);
        const auto hh = random_hermitian(n, rng);
        for (int k = 0; k <= 6; ++k) {
            const auto d = hs_moment_diagnostic(tt, hh, k);
            CHECK(std::abs(d.hs - d.moment) <= 1e-9 * std::max(1.0, d.moment));
        }
    }
}

TEST_CASE("isolating_edges separates every location", "[semispectral]") {
    const auto edges = isolating_edges({3.0, 1.0, 1.0 + 1e-14, 2.0});
    REQUIRE(edges.size() == 2);
    CHECK(edges[0] == 1.5);
    CHECK(edges[1] == 2.5);
}
