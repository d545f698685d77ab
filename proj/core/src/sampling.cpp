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

#include "smearlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace smearlab {

namespace {

double ipow(double x, int k) noexcept {
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= x;
    }
    return r;
}

void check_nonempty(const OutcomeSample &s) {
    if (s.outcomes.empty()) {
        throw Error(ErrorCode::InvalidArgument, "sample is empty");
    }
}

} // namespace

std::vector<double> outcome_probabilities(const DiscretizedPOVM &e, const DensityOperator &rho) {
    auto p = bin_probabilities(e, rho);
    double sum = 0.0;
    for (double &x : p) {
        if (x < -1e-9) {
            std::ostringstream os;
            os << "outcome probability " << x << " is negative";
            throw Error(ErrorCode::InvalidArgument, os.str());
        }
        x = std::max(x, 0.0);
        sum += x;
    }
    if (!(std::abs(sum - 1.0) < 1e-6)) {
        std::ostringstream os;
        os << "outcome probabilities sum to " << sum;
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
    for (double &x : p) {
        x /= sum;
    }
    return p;
}

OutcomeSample sample(const DiscretizedPOVM &e, const DensityOperator &rho, std::size_t n,
                     std::uint64_t seed, std::string source) {
    const auto p = outcome_probabilities(e, rho);
    std::vector<double> cdf(p.size());
    std::partial_sum(p.begin(), p.end(), cdf.begin());
    // Trailing zero-probability bins must not absorb rounding slack.
    std::size_t last = p.size() - 1;
    while (last > 0 && p[last] == 0.0) {
        --last;
    }
    std::fill(cdf.begin() + static_cast<std::ptrdiff_t>(last), cdf.end(), 1.0);

    OutcomeSample out;
    out.seed = seed;
    out.source = std::move(source);
    out.outcomes.resize(n);
    const auto lo = static_cast<std::uint32_t>(seed);
    const auto hi = static_cast<std::uint32_t>(seed >> 32);
    for (std::size_t shard = 0; shard * kShardSize < n; ++shard) {
        std::seed_seq seq{lo, hi, static_cast<std::uint32_t>(shard)};
        std::mt19937_64 rng(seq);
        const std::size_t end = std::min(n, (shard + 1) * kShardSize);
        for (std::size_t i = shard * kShardSize; i < end; ++i) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            const auto bin =
                static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            out.outcomes[i] = e.reps()[bin];
        }
    }
    return out;
}

double empirical_moment(const OutcomeSample &s, int k) {
    check_nonempty(s);
    double acc = 0.0;
    for (double x : s.outcomes) {
        acc += ipow(x, k);
    }
    return acc / static_cast<double>(s.outcomes.size());
}

double empirical_moment_std(const OutcomeSample &s, int k) {
    check_nonempty(s);
    if (s.outcomes.size() < 2) {
        return 0.0;
    }
    const double mean = empirical_moment(s, k);
    double acc = 0.0;
    for (double x : s.outcomes) {
        const double d = ipow(x, k) - mean;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(s.outcomes.size() - 1));
}

double predicted_moment(const DiscretizedPOVM &e, const DensityOperator &rho, int k) {
    const auto m = moment_operator_direct(e, k);
    return trace_pairing(rho, m).real();
}

std::vector<MomentComparison> compare_moments(const OutcomeSample &s, const DiscretizedPOVM &e,
                                              const DensityOperator &rho, int max_order) {
    std::vector<MomentComparison> out;
    for (int k = 0; k <= max_order; ++k) {
        MomentComparison c{k, empirical_moment(s, k), predicted_moment(e, rho, k), 0.0, 0.0};
        c.standard_error = empirical_moment_std(s, k) / std::sqrt(static_cast<double>(s.outcomes.size()));
        const double diff = c.empirical - c.predicted;
        if (c.standard_error > 0.0) {
            c.z = diff / c.standard_error;
        } else if (std::abs(diff) > 1e-12 * std::max(1.0, std::abs(c.predicted))) {
            c.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
        }
        out.push_back(c);
    }
    return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw Error(ErrorCode::InvalidArgument, "KS statistic needs two nonempty samples");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) {
            ++i;
        }
        while (j < b.size() && b[j] <= x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_critical_value_1pct(std::size_t n, std::size_t m) {
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    return 1.628 * std::sqrt((nn + mm) / (nn * mm));
}

} // namespace smearlab
