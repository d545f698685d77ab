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
 * Two signed discrete measures on the integers whose convolution vanishes on
 * every even integer, together with a function f that is integrable against
 * the convolution but not against the product measure.
 *
 * With b_{2k} = b_{2k+1} = a_k (and b_n = 0 for n < 0):
 *   mu({n}) = b_n,   nu({n}) = (-1)^n b_{-n},
 *   c_n = sum_j |b_j b_{j-n}|,   f(2k) = 1 / c_{2k},  f = 0 off the even integers.
 * The sequence is cut after k = M, so mu lives on {0..2M+1} and nu on {-(2M+1)..0}.
 */

#include <functional>
#include <vector>

#include "smearlab/measure.hpp"

namespace smearlab {

using SequenceGenerator = std::function<double(int)>;

/// a_k = 2^(-k-1).
double dyadic_sequence(int k);

struct Example1 {
    int cutoff = 0;
    std::vector<double> b; ///< b_0 .. b_{2M+1}
    ScalarMeasure mu;
    ScalarMeasure nu;

    [[nodiscard]] double b_at(long n) const noexcept;
    /// c_n = sum_j |b_j b_{j-n}|, computed from the sequence directly.
    [[nodiscard]] double slice_constant(long n) const noexcept;
    /// f(x) = 1/c_x at even integers with c_x > 0, zero elsewhere.
    [[nodiscard]] double f(double x) const noexcept;
    /// Largest |n| with a nonempty slice {x + y = n}.
    [[nodiscard]] long support_bound() const noexcept { return 2L * cutoff + 1; }
};

Example1 example1_build(const SequenceGenerator &a, int cutoff);

/// Integral of |f(x+y)| against |mu x nu| over the line x + y = n, summed by
/// brute force over atom pairs. Equals f(n) c_n = 1 for every even n in the
/// support. Odd n is rejected.
double example1_slice_absolute_integral(const Example1 &example, long n);

} // namespace smearlab
