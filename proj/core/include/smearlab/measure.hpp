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
 * Complex measures on the real line represented as finitely many atoms plus
 * an optional piecewise-constant density on a uniform grid.
 *
 * All quadrature against the density part uses cell midpoints, so a density
 * behaves like a set of point masses `step * value` sitting at the cell
 * midpoints. Convolution keeps that picture exact: convolving two gridded
 * densities convolves their midpoint masses.
 */

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smearlab/error.hpp"

namespace smearlab {

using Complex = std::complex<double>;

/// Locations closer than this are treated as the same atom.
inline constexpr double kLocationTolerance = 1e-12;

struct Atom {
    double location;
    Complex weight;
};

/// Piecewise-constant density. Cell i is [origin + i*step, origin + (i+1)*step).
struct GridDensity {
    double origin = 0.0;
    double step = 1.0;
    std::vector<Complex> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double cell_lower(std::size_t i) const noexcept {
        return origin + static_cast<double>(i) * step;
    }
    [[nodiscard]] double cell_midpoint(std::size_t i) const noexcept {
        return origin + (static_cast<double>(i) + 0.5) * step;
    }
    [[nodiscard]] double upper() const noexcept {
        return origin + static_cast<double>(values.size()) * step;
    }
};

class ScalarMeasure {
  public:
    /// The zero measure.
    ScalarMeasure() = default;

    /// Atoms must be strictly increasing in location; density step must be
    /// positive. Throws Error(InvalidArgument / NonFinite) otherwise.
    explicit ScalarMeasure(std::vector<Atom> atoms,
                           std::optional<GridDensity> density = std::nullopt);

    /// Sorts the atoms and merges locations within `merge_tolerance`.
    /// Merged weights are summed; zero-weight atoms are kept.
    static ScalarMeasure from_unsorted_atoms(std::vector<Atom> atoms,
                                             double merge_tolerance = kLocationTolerance);
    static ScalarMeasure point_mass(double location, Complex weight = 1.0);
    static ScalarMeasure from_density(GridDensity density);

    [[nodiscard]] const std::vector<Atom> &atoms() const noexcept { return atoms_; }
    [[nodiscard]] const std::optional<GridDensity> &density() const noexcept {
        return density_;
    }

    [[nodiscard]] Complex total_mass() const noexcept;

    /// Largest |x| over atom locations and grid endpoints (0 for the zero measure).
    [[nodiscard]] double support_radius() const noexcept;

    /// Weight of the atom at `location` (0 if there is none).
    [[nodiscard]] Complex atom_weight_at(double location,
                                         double tolerance = kLocationTolerance) const;

    /// Mass of the half-open interval (lower, upper]; density cells count by overlap.
    [[nodiscard]] Complex interval_mass(double lower, double upper) const;

  private:
    std::vector<Atom> atoms_;
    std::optional<GridDensity> density_;
};

/// A ScalarMeasure with nonnegative real weights and unit total mass.
class ProbabilityMeasure {
  public:
    static constexpr double kMassTolerance = 1e-12;

    explicit ProbabilityMeasure(ScalarMeasure measure);

    [[nodiscard]] const ScalarMeasure &measure() const noexcept { return measure_; }
    operator const ScalarMeasure &() const noexcept { return measure_; } // NOLINT

    /// Cumulative distribution F(t) = mu((-inf, t]).
    [[nodiscard]] double cdf(double t) const;

  private:
    ScalarMeasure measure_;
    std::vector<double> atom_cdf_;    // prefix sums of atom weights
    std::vector<double> density_cdf_; // prefix sums of cell masses
};

/// Cell values are exact cell averages of the normal density, renormalised so
/// the grid carries unit mass.
ProbabilityMeasure gaussian_density(double mean, double variance, double lower, double upper,
                                    double step);
ProbabilityMeasure uniform_density(double lower, double upper, double step);

/// Density proportional to (1+|x|)^(-exponent) on [-half_width, half_width],
/// with exact cell averages. Finite moments exist only below order exponent-1.
ProbabilityMeasure power_tail_density(double exponent, double half_width, double step);

ProbabilityMeasure discrete_uniform(std::vector<double> locations);

double total_variation(const ScalarMeasure &mu) noexcept;

struct ConvolutionOptions {
    double merge_tolerance = kLocationTolerance;
    /// Relative tolerance (in units of step) for shifted grids to count as aligned.
    double grid_alignment_tolerance = 1e-9;
    std::size_t max_grid_cells = std::size_t{1} << 24;
};

/// mu*nu. Atom pairs add locations and multiply weights. Atom-density terms
/// shift the density. Density-density terms convolve midpoint masses; the
/// result cells are centred on sums of cell midpoints. Every shifted grid must
/// land on one common lattice (no resampling), else GridIncompatible.
ScalarMeasure convolve(const ScalarMeasure &mu, const ScalarMeasure &nu,
                       const ConvolutionOptions &options = {});

// ---------------------------------------------------------------------------
// Windowed moments

enum class MomentVerdict { Converged, Diverging, Undetermined };

std::string_view to_string(MomentVerdict verdict) noexcept;

struct ConvergenceCriteria {
    /// Converged: last two partial absolute moments differ by less than this, relative.
    double relative_tolerance = 1e-9;
    /// Diverging: each of the last growth_windows-1 steps grows by at least this fraction.
    double growth_threshold = 0.05;
    std::size_t growth_windows = 3;

    /// Looser convergence test for tail diagnostics on growing decades of windows.
    static ConvergenceCriteria tail_diagnostic() noexcept {
        return ConvergenceCriteria{1e-2, 0.05, 3};
    }
};

struct MomentWindow {
    double radius;
    Complex partial;        ///< integral of x^k over |x| <= radius
    double partial_absolute; ///< integral of |x|^k over |x| <= radius against |mu|
};

struct MomentReport {
    int order = 0;
    std::vector<MomentWindow> windows;
    MomentVerdict verdict = MomentVerdict::Undetermined;

    /// Partial moment on the largest window.
    [[nodiscard]] Complex value() const;
};

/// Windows used when the caller supplies none: support_radius times
/// {1/8, 1/4, 1/2, 1, 2}, so the last two windows always enclose the support.
std::vector<double> default_radii(const ScalarMeasure &mu);

MomentReport moment(const ScalarMeasure &mu, int k, const std::vector<double> &radii,
                    const ConvergenceCriteria &criteria = {});

struct MomentWindows {
    std::vector<double> radii; ///< empty selects default_radii per measure
    ConvergenceCriteria criteria;
};

/// Thrown when a moment needed by a closed-form formula has not converged.
class NonconvergedMoment : public Error {
  public:
    NonconvergedMoment(std::string message, MomentReport report)
        : Error(ErrorCode::Nonconverged, message), report_(std::move(report)) {}

    [[nodiscard]] const MomentReport &report() const noexcept { return report_; }

  private:
    MomentReport report_;
};

/// mu[k] with a convergence check; throws NonconvergedMoment when the verdict
/// is not Converged.
Complex checked_moment(const ScalarMeasure &mu, int k, const MomentWindows &windows = {});

/// sum_n C(k,n) mu[k-n] nu[n]. Requires converged moments of both measures
/// for every order up to k.
Complex binomial_convolution_moment(const ScalarMeasure &mu, const ScalarMeasure &nu, int k,
                                    const MomentWindows &windows = {});

using RealFunction = std::function<Complex(double)>;

/// sum f(x_i) w_i + step * sum f(midpoint) value. Throws NonFinite if f is not
/// finite at an atom location or cell midpoint.
Complex integrate(const RealFunction &f, const ScalarMeasure &mu);

double binomial_coefficient(int n, int k);

} // namespace smearlab
