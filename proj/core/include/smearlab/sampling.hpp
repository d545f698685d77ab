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
 * Monte-Carlo outcome sampling from a POVM and a state, and comparison of
 * empirical moments with trace predictions.
 *
 * Draws come from std::mt19937_64 in shards of kShardSize outcomes. Shard s is
 * seeded from std::seed_seq{seed_lo, seed_hi, s}, so the outcome list depends
 * only on the seed and the count.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "smearlab/linalg.hpp"
#include "smearlab/semispectral.hpp"

namespace smearlab {

inline constexpr std::size_t kShardSize = 65536;
inline constexpr const char *kGeneratorName = "mt19937_64/seed_seq-shard65536/inverse-cdf";

struct OutcomeSample {
    std::uint64_t seed = 0;
    std::vector<double> outcomes; ///< bin representative points
    std::string source;           ///< POVM identifier
    std::string generator = kGeneratorName;
};

/// Tr[rho E_i] clipped at 0 and renormalised. Throws InvalidArgument when a
/// probability is below -1e-9 or the sum is off by 1e-6 or more.
std::vector<double> outcome_probabilities(const DiscretizedPOVM &e, const DensityOperator &rho);

OutcomeSample sample(const DiscretizedPOVM &e, const DensityOperator &rho, std::size_t n,
                     std::uint64_t seed, std::string source = "povm");

/// Mean of outcome^k; throws InvalidArgument on an empty sample.
double empirical_moment(const OutcomeSample &s, int k);
/// Sample standard deviation of outcome^k.
double empirical_moment_std(const OutcomeSample &s, int k);
/// Tr[rho moment_operator_direct(E, k)].
double predicted_moment(const DiscretizedPOVM &e, const DensityOperator &rho, int k);

struct MomentComparison {
    int order;
    double empirical;
    double predicted;
    double standard_error; ///< sample std / sqrt(n)
    double z;              ///< (empirical - predicted) / standard_error, 0 when both agree exactly
};

std::vector<MomentComparison> compare_moments(const OutcomeSample &s, const DiscretizedPOVM &e,
                                              const DensityOperator &rho, int max_order);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// c(alpha) sqrt((n+m)/(n m)) with c(0.01) = 1.628.
double ks_critical_value_1pct(std::size_t n, std::size_t m);

} // namespace smearlab
