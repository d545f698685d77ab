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
 * Seeded random instances for property checks and benchmarks.
 */

#include <cstdint>
#include <random>
#include <vector>

#include "smearlab/linalg.hpp"
#include "smearlab/measure.hpp"

namespace smearlab {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts, symmetrised.
HermitianOperator random_hermitian(Index dim, Rng &rng);

/// Hermitian with eigenvalues drawn from `values` (with replacement) in a Haar-random basis.
HermitianOperator random_degenerate_hermitian(Index dim, const std::vector<double> &values, Rng &rng);

/// Haar unitary by QR of a complex Ginibre matrix with phase correction.
Matrix random_unitary(Index dim, Rng &rng);

/// G G^dagger / Tr with G of shape dim x rank.
DensityOperator random_density(Index dim, Index rank, Rng &rng);

/// Distinct uniform locations in [-span, span] with complex normal weights.
ScalarMeasure random_atomic_measure(std::size_t atoms, double span, Rng &rng, bool complex_weights = true);

/// Uniform weights on distinct random locations in [-span, span].
ProbabilityMeasure random_probability_measure(std::size_t atoms, double span, Rng &rng);

} // namespace smearlab
