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

#include "smearlab/random_instances.hpp"

#include <algorithm>
#include <set>

namespace smearlab {

namespace {

Matrix ginibre(Index rows, Index cols, Rng &rng) {
    std::normal_distribution<double> normal;
    Matrix g(rows, cols);
    for (Index c = 0; c < cols; ++c) {
        for (Index r = 0; r < rows; ++r) {
            g(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    return g;
}

std::vector<double> distinct_locations(std::size_t count, double span, Rng &rng) {
    std::uniform_real_distribution<double> uniform(-span, span);
    std::set<double> seen;
    while (seen.size() < count) {
        seen.insert(uniform(rng));
    }
    std::vector<double> out(seen.begin(), seen.end());
    return out;
}

} // namespace

HermitianOperator random_hermitian(Index dim, Rng &rng) {
    return HermitianOperator::symmetrized(ginibre(dim, dim, rng));
}

Matrix random_unitary(Index dim, Rng &rng) {
    const Eigen::HouseholderQR<Matrix> qr(ginibre(dim, dim, rng));
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR();
    for (Index k = 0; k < dim; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) {
            q.col(k) *= r(k, k) / mag;
        }
    }
    return q;
}

HermitianOperator random_degenerate_hermitian(Index dim, const std::vector<double> &values, Rng &rng) {
    if (values.empty()) {
        throw Error(ErrorCode::InvalidArgument, "need at least one eigenvalue");
    }
    std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
    Eigen::VectorXd diag(dim);
    for (Index k = 0; k < dim; ++k) {
        diag(k) = values[pick(rng)];
    }
    const Matrix u = random_unitary(dim, rng);
    return HermitianOperator::symmetrized(u * diag.cast<Complex>().asDiagonal() * u.adjoint());
}

DensityOperator random_density(Index dim, Index rank, Rng &rng) {
    const Matrix g = ginibre(dim, std::clamp<Index>(rank, 1, dim), rng);
    Matrix t = g * g.adjoint();
    t = 0.5 * (t + t.adjoint());
    t /= t.trace().real();
    return DensityOperator(std::move(t));
}

ScalarMeasure random_atomic_measure(std::size_t atoms, double span, Rng &rng, bool complex_weights) {
    std::normal_distribution<double> normal;
    std::vector<Atom> out;
    for (double x : distinct_locations(atoms, span, rng)) {
        const double re = normal(rng);
        const double im = complex_weights ? normal(rng) : 0.0;
        out.push_back({x, Complex(re, im)});
    }
    return ScalarMeasure(std::move(out));
}

ProbabilityMeasure random_probability_measure(std::size_t atoms, double span, Rng &rng) {
    return discrete_uniform(distinct_locations(atoms, span, rng));
}

} // namespace smearlab
