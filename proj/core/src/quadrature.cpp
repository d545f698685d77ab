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

#include "quadrature.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "smearlab/error.hpp"

namespace smearlab::detail {

// Golub-Welsch on the Legendre Jacobi matrix.
GaussLegendre gauss_legendre(int order) {
    if (order < 1 || order > 64) {
        throw Error(ErrorCode::InvalidArgument, "quadrature order must be in [1, 64]");
    }
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double beta = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = beta;
        jacobi(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussLegendre out;
    for (int i = 0; i < order; ++i) {
        const double v0 = solver.eigenvectors()(0, i);
        out.nodes.push_back(std::abs(solver.eigenvalues()(i)) < 1e-15 ? 0.0 : solver.eigenvalues()(i));
        out.weights.push_back(2.0 * v0 * v0);
    }
    return out;
}

} // namespace smearlab::detail
