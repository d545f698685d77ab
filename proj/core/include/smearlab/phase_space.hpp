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
 * Truncated Fock-space construction of covariant phase-space observables
 *
 *     E^T(Z) = (1/2pi) \int_Z W(q,p) T W(q,p)^* dq dp,
 *
 * with W(q,p) = exp(i(pQ - qP)), Q = (a + a^dagger)/sqrt(2) and
 * P = (a - a^dagger)/(i sqrt(2)). Cells of a square grid are integrated with
 * tensor Gauss-Legendre rules.
 *
 * Displacements can be computed in a larger working space and compressed back
 * to the N-level space of T. Without that padding, coherent states near the
 * grid corners wrap around the top Fock level and the cell effects can sum to
 * more than the identity.
 */

#include <functional>
#include <string>
#include <vector>

#include "smearlab/linalg.hpp"
#include "smearlab/measure.hpp"
#include "smearlab/semispectral.hpp"

namespace smearlab {

enum class Quadrature { Position, Momentum };

std::string_view to_string(Quadrature quadrature) noexcept;

/// a|n> = sqrt(n)|n-1>. Dimension must be at least 2.
Operator lowering_operator(Index n);
HermitianOperator position_operator(Index n);
HermitianOperator momentum_operator(Index n);
HermitianOperator quadrature_operator(Index n, Quadrature quadrature);

/// exp(i(pQ - qP)) on the n-level space, by scaling and squaring.
Operator weyl(double q, double p, Index n);

/// Coherent state W(q,p)|0>: coefficients e^{-|alpha|^2/2} alpha^k / sqrt(k!),
/// alpha = (q + ip)/sqrt(2), renormalised after truncation.
Vector coherent_vector(Index n, double q, double p);

/// exp(r(a^2 - a^dagger^2)/2)|0>, renormalised after truncation. Var Q = e^{-2r}/2.
Vector squeezed_vacuum_vector(Index n, double r);

/// diag((-i)^k): conjugation T -> F T F^dagger turns Q-statistics into P-statistics.
Operator fourier_operator(Index n);

/// Exact displacements on a fixed truncation. With R = diag(e^{-i theta k}),
/// R^dagger Q R = cos(theta) Q + sin(theta) P, so pQ - qP is a rotated multiple
/// of Q and W is diagonal in a rotated eigenbasis of Q.
class DisplacementEngine {
  public:
    explicit DisplacementEngine(Index n);

    [[nodiscard]] Index dim() const noexcept { return eigenvalues_.size(); }

    /// W(q,p) as a dense matrix.
    [[nodiscard]] Matrix weyl(double q, double p) const;
    /// W(q,p) applied to the columns of v.
    [[nodiscard]] Matrix apply(double q, double p, const Matrix &v) const;

  private:
    Eigen::VectorXd eigenvalues_;
    RealMatrix eigenvectors_;
};

struct PhaseSpaceGrid {
    double half_width = 6.0;
    int points_per_axis = 48;

    /// L > 0, 2 <= m <= 256; throws InvalidArgument otherwise.
    void validate() const;
    [[nodiscard]] double cell_width() const noexcept { return 2.0 * half_width / points_per_axis; }
    [[nodiscard]] double cell_area() const noexcept { return cell_width() * cell_width(); }
    [[nodiscard]] double cell_lower(int i) const noexcept { return -half_width + i * cell_width(); }
    [[nodiscard]] double cell_midpoint(int i) const noexcept {
        return -half_width + (i + 0.5) * cell_width();
    }
    /// The m+1 grid lines.
    [[nodiscard]] std::vector<double> edges() const;
};

inline constexpr int kAutomaticPadding = -1;

struct PhaseSpaceOptions {
    int quadrature_order = 3;
    /// Extra Fock levels for the displacement step. kAutomaticPadding sizes the
    /// working space from the largest |alpha| on the grid; 0 is plain truncation.
    int displacement_padding = kAutomaticPadding;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// Working dimension used for displacements: n + padding. Automatic padding
/// uses r^2 + 10r + 20 with r = sqrt(n-1) + L, at least n and at most
/// kMaxDimension. n is the number of occupied levels of the state.
Index displacement_dimension(Index n, const PhaseSpaceGrid &grid, const PhaseSpaceOptions &options);

class PhaseSpacePOVM {
  public:
    PhaseSpacePOVM(PhaseSpaceGrid grid, std::vector<Matrix> effects, std::vector<std::string> warnings);

    [[nodiscard]] const PhaseSpaceGrid &grid() const noexcept { return grid_; }
    [[nodiscard]] Index dim() const noexcept { return effects_.front().rows(); }
    [[nodiscard]] int points_per_axis() const noexcept { return grid_.points_per_axis; }

    /// Cell (i, j) covers q in cell i and p in cell j.
    [[nodiscard]] const Matrix &effect(int i, int j) const {
        return effects_.at(static_cast<std::size_t>(i) * grid_.points_per_axis + j);
    }
    [[nodiscard]] const std::vector<Matrix> &effects() const noexcept { return effects_; }
    [[nodiscard]] const std::vector<std::string> &warnings() const noexcept { return warnings_; }

    [[nodiscard]] Matrix total() const;
    /// I - total().
    [[nodiscard]] Matrix deficiency() const;
    /// Tr(total()) / N.
    [[nodiscard]] double captured_mass() const;
    /// Tr(rho total()).
    [[nodiscard]] double captured_mass(const DensityOperator &rho) const;

  private:
    PhaseSpaceGrid grid_;
    std::vector<Matrix> effects_;
    std::vector<std::string> warnings_;
};

/// Assembly is parallel over cells; every cell is summed in a fixed order by a
/// single thread, so results do not depend on the thread count.
PhaseSpacePOVM build_phase_space_povm(const DensityOperator &t, const PhaseSpaceGrid &grid,
                                      const PhaseSpaceOptions &options = {});

/// Column (marginal_x) or row (marginal_y) sums. Edges are the grid lines; the
/// two outer bins share the identity deficiency equally and have the grid
/// boundary as representative point, interior bins the cell midpoint.
DiscretizedPOVM marginal_x(const PhaseSpacePOVM &e);
DiscretizedPOVM marginal_y(const PhaseSpacePOVM &e);

/// sum_n C(k,n) (-1)^(k-n) Tr[X^(k-n) T] X^n with X = Q or P on the space of T.
Operator marginal_moment_operator(const DensityOperator &t, int k,
                                  Quadrature quadrature = Quadrature::Position);

/// Continuous distribution of Q (or P) in state T, from Hermite functions,
/// gridded with the given step on [-half_width, half_width]. With reflect the
/// distribution of -Q is returned. half_width <= 0 selects sqrt(2N+1) + 8.
ProbabilityMeasure position_distribution(const DensityOperator &t,
                                         Quadrature quadrature = Quadrature::Position,
                                         bool reflect = false, double step = 0.01,
                                         double half_width = 0.0);

/// Spectral measure of Q (or P) on an ambient truncation, compressed to the
/// first n levels. Effects sum to the identity exactly.
AtomicPOVM compressed_quadrature_measure(Index n, Index ambient = kMaxDimension,
                                         Quadrature quadrature = Quadrature::Position);

struct MarginalCheckReport {
    Index dim = 0;
    Index block = 0;
    PhaseSpaceGrid grid;
    double captured_mass = 0.0;
    std::vector<double> edges;
    /// marginal_x(E^T) against smear(p_T^{-Q}, compressed E^Q), leading block.
    std::vector<double> bin_distance;
    double max_distance = 0.0;
    /// Same over the whole space.
    double max_distance_full = 0.0;
    /// Same with p_T^{+Q}; a sign-convention control.
    double max_distance_plus = 0.0;
    /// Against smear(state_distribution(T, -Q_N), E^{Q_N}) with both sides truncated.
    double max_distance_truncated = 0.0;
    /// Bin masses in |0> on both sides.
    std::vector<double> marginal_mass;
    std::vector<double> smeared_mass;
    double max_mass_difference = 0.0;
};

/// block <= 0 selects N/2.
MarginalCheckReport marginal_convolution_check(const PhaseSpacePOVM &e, const DensityOperator &t,
                                               Index block = 0);
/// Builds E^T first.
MarginalCheckReport marginal_convolution_check(const DensityOperator &t, const PhaseSpaceGrid &grid,
                                               const PhaseSpaceOptions &options = {},
                                               Index block = 0);

struct MarginalSweep {
    std::vector<MarginalCheckReport> reports;
    /// Distances non-increasing along the sweep, ties within relative 1e-6.
    bool monotone = false;
};

/// Runs the check for each dimension with a common leading block
/// (min(dims)/2 unless given), so the distances are comparable.
MarginalSweep marginal_convolution_sweep(const std::function<DensityOperator(Index)> &state,
                                         const std::vector<Index> &dims, const PhaseSpaceGrid &grid,
                                         const PhaseSpaceOptions &options = {}, Index block = 0);

} // namespace smearlab
