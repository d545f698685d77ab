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
 * Finite-dimensional operator measures on the real line: spectral measures of
 * Hermitian operators, atomic POVMs, their binning into DiscretizedPOVMs, and
 * smearing by a probability measure.
 *
 * Moment operators are available two ways. moment_operator_direct sums
 * rep^k * effect over the bins of a DiscretizedPOVM. moment_operator_binomial
 * evaluates sum_n C(k,n) mu[k-n] A^n. For atomic mu and bins that isolate
 * every smeared atom the two agree to rounding.
 */

#include <string>
#include <vector>

#include "smearlab/linalg.hpp"
#include "smearlab/measure.hpp"

namespace smearlab {

struct OperatorAtom {
    double location;
    Matrix effect;
};

class SpectralMeasureFD {
  public:
    explicit SpectralMeasureFD(SpectralDecomposition decomposition);

    [[nodiscard]] const SpectralDecomposition &decomposition() const noexcept {
        return decomposition_;
    }
    [[nodiscard]] Index dim() const noexcept { return decomposition_.dim(); }
    [[nodiscard]] std::vector<OperatorAtom> atoms() const;

  private:
    SpectralDecomposition decomposition_;
};

/// Finitely many positive effects at distinct locations, summing to identity.
/// Compressions of spectral measures onto a subspace have this form.
class AtomicPOVM {
  public:
    explicit AtomicPOVM(std::vector<OperatorAtom> atoms, double normalization_tolerance = 1e-8);
    explicit AtomicPOVM(const SpectralMeasureFD &spectral);

    [[nodiscard]] const std::vector<OperatorAtom> &atoms() const noexcept { return atoms_; }
    [[nodiscard]] Index dim() const noexcept { return dim_; }

  private:
    std::vector<OperatorAtom> atoms_;
    Index dim_ = 0;
};

struct PovmTolerance {
    double positivity = 1e-9;
    double normalization = 1e-8;
};

/// Bins (-inf, e_0], (e_0, e_1], ..., (e_last, inf) with one effect and one
/// representative point each. bin_count() == edges().size() + 1.
class DiscretizedPOVM {
  public:
    DiscretizedPOVM(std::vector<double> edges, std::vector<Matrix> effects,
                    std::vector<double> reps, const PovmTolerance &tolerance = {});

    [[nodiscard]] const std::vector<double> &edges() const noexcept { return edges_; }
    [[nodiscard]] const std::vector<Matrix> &effects() const noexcept { return effects_; }
    [[nodiscard]] const std::vector<double> &reps() const noexcept { return reps_; }
    [[nodiscard]] std::size_t bin_count() const noexcept { return effects_.size(); }
    [[nodiscard]] Index dim() const noexcept { return effects_.front().rows(); }

    /// Bin holding x, using the (lower, upper] convention.
    [[nodiscard]] std::size_t bin_of(double x) const;
    [[nodiscard]] double bin_lower(std::size_t bin) const;
    [[nodiscard]] double bin_upper(std::size_t bin) const;
    [[nodiscard]] Matrix total() const;

  private:
    std::vector<double> edges_;
    std::vector<Matrix> effects_;
    std::vector<double> reps_;
};

SpectralMeasureFD spectral_measure_of(const HermitianOperator &a,
                                      double degeneracy_tolerance = kDefaultDegeneracyTolerance);

/// X -> <psi|E(X) phi> as atoms at eigenvalues (spectral) or representative points (binned).
ScalarMeasure bilinear_measure(const SpectralMeasureFD &e, const Vector &psi, const Vector &phi);
ScalarMeasure bilinear_measure(const AtomicPOVM &e, const Vector &psi, const Vector &phi);
ScalarMeasure bilinear_measure(const DiscretizedPOVM &e, const Vector &psi, const Vector &phi);

/// Edges placed halfway between consecutive distinct locations, so each
/// location sits alone in its bin.
std::vector<double> isolating_edges(std::vector<double> locations,
                                    double merge_tolerance = kLocationTolerance);

/// Effect of bin X is sum_j mu(X - a_j) E_j. Atoms of mu are placed exactly,
/// density cells by overlap. Representative point of a bin: the atom location
/// if it holds exactly one (smeared) atom and no density mass; otherwise the
/// midpoint, or the finite edge for the two outer bins.
DiscretizedPOVM smear(const ProbabilityMeasure &mu, const AtomicPOVM &e,
                      std::vector<double> edges);
DiscretizedPOVM smear(const ProbabilityMeasure &mu, const SpectralMeasureFD &e,
                      std::vector<double> edges);

/// Spectral measure binned without smearing (smear by the point mass at 0).
DiscretizedPOVM bin_measure(const AtomicPOVM &e, std::vector<double> edges);

/// sum_bins rep^k * effect.
Operator moment_operator_direct(const DiscretizedPOVM &e, int k);

/// sum_n C(k,n) mu[k-n] A^n. Throws NonconvergedMoment if any mu[n], n <= k,
/// fails the windowed convergence test.
Operator moment_operator_binomial(const ProbabilityMeasure &mu, const HermitianOperator &a, int k,
                                  const MomentWindows &windows = {});

/// p_T^A: atoms at the eigenvalues of A with weights Tr[T P_j].
ProbabilityMeasure state_distribution(const DensityOperator &t, const HermitianOperator &a,
                                      double degeneracy_tolerance = kDefaultDegeneracyTolerance);

struct HsMomentDiagnostic {
    double hs;     ///< ||f(A) sqrt(T)||_HS^2 with f(x) = |x|^(k/2)
    double moment; ///< integral of |x|^k against p_T^A
};

HsMomentDiagnostic hs_moment_diagnostic(const DensityOperator &t, const HermitianOperator &a, int k);

/// Tr[A^m T]; throws NumericalFailure if the imaginary residue exceeds 1e-10 (relative).
double trace_moment(const DensityOperator &t, const HermitianOperator &a, int m);

/// Tr[rho E_bin] for every bin.
std::vector<double> bin_probabilities(const DiscretizedPOVM &e, const DensityOperator &rho);

} // namespace smearlab
