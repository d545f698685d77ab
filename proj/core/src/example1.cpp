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

#include "smearlab/example1.hpp"

#include <cmath>
#include <cstdlib>

namespace smearlab {

double dyadic_sequence(int k) { return std::ldexp(1.0, -k - 1); }

double Example1::b_at(long n) const noexcept {
    if (n < 0 || n >= static_cast<long>(b.size())) {
        return 0.0;
    }
    return b[static_cast<std::size_t>(n)];
}

double Example1::slice_constant(long n) const noexcept {
    double c = 0.0;
    for (long j = 0; j < static_cast<long>(b.size()); ++j) {
        c += std::abs(b_at(j) * b_at(j - n));
    }
    return c;
}

double Example1::f(double x) const noexcept {
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-9) {
        return 0.0;
    }
    const auto n = static_cast<long>(r);
    if (n % 2 != 0) {
        return 0.0;
    }
    const double c = slice_constant(n);
    return c > 0.0 ? 1.0 / c : 0.0;
}

Example1 example1_build(const SequenceGenerator &a, int cutoff) {
    if (cutoff < 1) {
        throw Error(ErrorCode::InvalidArgument, "example1 cutoff must be a positive integer");
    }
    Example1 ex;
    ex.cutoff = cutoff;
    ex.b.resize(2 * static_cast<std::size_t>(cutoff) + 2);
    for (int k = 0; k <= cutoff; ++k) {
        const double ak = a(k);
        if (!std::isfinite(ak) || !(ak > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "sequence terms a_k must be finite and positive");
        }
        ex.b[2 * static_cast<std::size_t>(k)] = ak;
        ex.b[2 * static_cast<std::size_t>(k) + 1] = ak;
    }

    const long top = ex.support_bound();
    std::vector<Atom> mu_atoms;
    std::vector<Atom> nu_atoms;
    mu_atoms.reserve(ex.b.size());
    nu_atoms.reserve(ex.b.size());
    for (long n = 0; n <= top; ++n) {
        mu_atoms.push_back({static_cast<double>(n), ex.b_at(n)});
    }
    for (long n = -top; n <= 0; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        nu_atoms.push_back({static_cast<double>(n), sign * ex.b_at(-n)});
    }
    ex.mu = ScalarMeasure(std::move(mu_atoms));
    ex.nu = ScalarMeasure(std::move(nu_atoms));
    return ex;
}

double example1_slice_absolute_integral(const Example1 &example, long n) {
    if (n % 2 != 0) {
        throw Error(ErrorCode::InvalidArgument, "slice integral is defined for even n only");
    }
    const double target = static_cast<double>(n);
    double slice = 0.0;
    for (const auto &x : example.mu.atoms()) {
        for (const auto &y : example.nu.atoms()) {
            if (std::abs(x.location + y.location - target) <= kLocationTolerance) {
                slice += std::abs(x.weight) * std::abs(y.weight);
            }
        }
    }
    if (!(slice > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "slice {x + y = n} carries no mass");
    }
    return std::abs(example.f(target)) * slice;
}

} // namespace smearlab
