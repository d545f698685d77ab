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
 * Dense finite-dimensional operators with validated strong types and the
 * Hermitian functional calculus used throughout the library.
 */

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "smearlab/error.hpp"

namespace smearlab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr Index kMaxDimension = 256;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kDefaultDegeneracyTolerance = 1e-8;

/// Square complex matrix with finite entries, dimension 1..kMaxDimension.
class Operator {
  public:
    explicit Operator(Matrix m);

    static Operator identity(Index dim);

    [[nodiscard]] Index dim() const noexcept { return m_.rows(); }
    [[nodiscard]] const Matrix &matrix() const noexcept { return m_; }

  protected:
    Matrix m_;
};

/// ||M - M^dagger||_max <= tolerance; the stored matrix is the symmetrised input.
class HermitianOperator : public Operator {
  public:
    explicit HermitianOperator(Matrix m, double tolerance = kHermitianTolerance);

    static HermitianOperator diagonal(const std::vector<double> &entries);
    /// (M + M^dagger)/2 with no tolerance check.
    static HermitianOperator symmetrized(const Matrix &m);

    [[nodiscard]] HermitianOperator negated() const;
};

/// Hermitian, eigenvalues >= -kPsdTolerance, unit trace within kTraceTolerance.
class DensityOperator : public HermitianOperator {
  public:
    explicit DensityOperator(Matrix m);

    /// |v><v| / <v|v>.
    static DensityOperator pure(const Vector &v);
    static DensityOperator basis_state(Index dim, Index level);
    static DensityOperator maximally_mixed(Index dim);
};

struct SpectralDecomposition {
    std::vector<double> eigenvalues; ///< strictly increasing
    std::vector<Matrix> projections;

    [[nodiscard]] Index dim() const noexcept {
        return projections.empty() ? 0 : projections.front().rows();
    }
    [[nodiscard]] Matrix reconstruct() const;
};

/// Eigenvalues closer than degeneracy_tolerance (to their neighbour) share one
/// projection; the merged eigenvalue is the mean of the group.
SpectralDecomposition decompose(const HermitianOperator &a,
                                double degeneracy_tolerance = kDefaultDegeneracyTolerance);

/// f(A) = sum_j f(lambda_j) P_j.
HermitianOperator apply_function(const HermitianOperator &a, const std::function<double(double)> &f,
                                 double degeneracy_tolerance = kDefaultDegeneracyTolerance);

/// sqrt(Tr B^dagger B).
double hs_norm(const Matrix &b);
double hs_norm(const Operator &b);

/// Tr(TA).
std::complex<double> trace_pairing(const Operator &t, const Operator &a);

/// Square root of a density operator; eigenvalues in [-kPsdTolerance, 0) are clipped to 0.
Matrix sqrt_psd(const DensityOperator &t);

Matrix matrix_power(const Matrix &a, int k);

double max_entry_distance(const Matrix &a, const Matrix &b);

/// Smallest eigenvalue of (M + M^dagger)/2.
double min_hermitian_eigenvalue(const Matrix &m);

} // namespace smearlab
