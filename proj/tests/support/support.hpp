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
 * Independent oracles shared by the unit and acceptance tests. Nothing here
 * calls the library routine it is used to check.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "smearlab/linalg.hpp"
#include "smearlab/measure.hpp"
#include "smearlab/random_instances.hpp"

namespace smearlab::testing {

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform point of the closed complex unit disc.
inline Complex unit_disc(Rng &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = std::sqrt(u(rng));
    const double t = 2.0 * kPi * u(rng);
    return std::polar(r, t);
}

/// Atoms on a lattice of spacing 1/8 in [-span, span], so pairwise sums
/// collide exactly. Weights in the unit disc. count <= 16 span + 1.
inline std::vector<Atom> random_lattice_atoms(std::size_t count, int span, Rng &rng) {
    if (count > static_cast<std::size_t>(16 * span + 1)) {
        throw std::invalid_argument("more atoms than lattice sites");
    }
    std::uniform_int_distribution<int> site(-8 * span, 8 * span);
    std::map<int, Complex> picked;
    while (picked.size() < count) {
        picked.emplace(site(rng), unit_disc(rng));
    }
    std::vector<Atom> atoms;
    for (const auto &[s, w] : picked) {
        atoms.push_back({s / 8.0, w});
    }
    return atoms;
}

/// Product measure pushed forward by addition, accumulated in a map keyed on
/// the exact sum.
inline std::map<double, Complex> brute_force_convolution(const std::vector<Atom> &a,
                                                         const std::vector<Atom> &b) {
    std::map<double, Complex> out;
    for (const auto &x : a) {
        for (const auto &y : b) {
            out[x.location + y.location] += x.weight * y.weight;
        }
    }
    return out;
}

inline Complex atom_moment(const std::vector<Atom> &atoms, int k) {
    Complex s = 0.0;
    for (const auto &a : atoms) {
        s += std::pow(a.location, k) * a.weight;
    }
    return s;
}

inline double relative_error(Complex value, Complex reference) {
    return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

inline double normal_cdf(double x, double mean, double variance) {
    return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

/// Ladder operators built entry by entry, independent of the library helpers.
inline Matrix oracle_lowering(Index n) {
    Matrix a = Matrix::Zero(n, n);
    for (Index k = 1; k < n; ++k) {
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    return a;
}

inline Matrix oracle_position(Index n) {
    const Matrix a = oracle_lowering(n);
    return (a + a.adjoint()) / std::sqrt(2.0);
}

inline Matrix oracle_momentum(Index n) {
    const Matrix a = oracle_lowering(n);
    return (a - a.adjoint()) / Complex(0.0, std::sqrt(2.0));
}

/// Max-entry distance restricted to the leading block.
inline double block_distance(const Matrix &a, const Matrix &b, Index block) {
    return (a.topLeftCorner(block, block) - b.topLeftCorner(block, block)).cwiseAbs().maxCoeff();
}

} // namespace smearlab::testing
