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

#include "smearlab/semispectral.hpp"

#include <algorithm>
#include <cmath>
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

void check_edges(const std::vector<double> &edges) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!std::isfinite(edges[i]) || (i > 0 && !(edges[i] > edges[i - 1]))) {
            throw Error(ErrorCode::InvalidArgument, "bin edges must be finite and strictly increasing");
        }
    }
}

void check_vector_dims(Index dim, const Vector &psi, const Vector &phi) {
    if (psi.size() != dim || phi.size() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "vector dimension does not match the measure");
    }
}

// Cumulative mass of a gridded density, linear inside cells.
class DensityCdf {
  public:
    explicit DensityCdf(const GridDensity &d) : d_(d) {
        prefix_.reserve(d.size() + 1);
        prefix_.push_back(0.0);
        double acc = 0.0;
        for (const auto &v : d.values) {
            acc += d.step * v.real();
            prefix_.push_back(acc);
        }
    }

    [[nodiscard]] double operator()(double t) const noexcept {
        const double u = (t - d_.origin) / d_.step;
        if (!(u > 0.0)) {
            return 0.0;
        }
        if (u >= static_cast<double>(d_.size())) {
            return prefix_.back();
        }
        const auto cell = static_cast<std::size_t>(u);
        return prefix_[cell] + (u - static_cast<double>(cell)) * d_.step * d_.values[cell].real();
    }

    [[nodiscard]] double total() const noexcept { return prefix_.back(); }

  private:
    const GridDensity &d_;
    std::vector<double> prefix_;
};

} // namespace

// ---------------------------------------------------------------------------

SpectralMeasureFD::SpectralMeasureFD(SpectralDecomposition decomposition)
    : decomposition_(std::move(decomposition)) {
    const auto &d = decomposition_;
    if (d.eigenvalues.empty() || d.eigenvalues.size() != d.projections.size()) {
        throw Error(ErrorCode::InvalidArgument, "spectral measure needs one projection per eigenvalue");
    }
    for (std::size_t j = 0; j < d.eigenvalues.size(); ++j) {
        if (d.projections[j].rows() != d.dim() || d.projections[j].cols() != d.dim()) {
            throw Error(ErrorCode::DimensionMismatch, "projections differ in dimension");
        }
        if (j > 0 && !(d.eigenvalues[j] > d.eigenvalues[j - 1])) {
            throw Error(ErrorCode::InvalidArgument, "eigenvalues must be strictly increasing");
        }
    }
}

std::vector<OperatorAtom> SpectralMeasureFD::atoms() const {
    std::vector<OperatorAtom> out;
    out.reserve(decomposition_.eigenvalues.size());
    for (std::size_t j = 0; j < decomposition_.eigenvalues.size(); ++j) {
        out.push_back({decomposition_.eigenvalues[j], decomposition_.projections[j]});
    }
    return out;
}

AtomicPOVM::AtomicPOVM(std::vector<OperatorAtom> atoms, double normalization_tolerance)
    : atoms_(std::move(atoms)) {
    if (atoms_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "operator measure needs at least one atom");
    }
    std::stable_sort(atoms_.begin(), atoms_.end(),
                     [](const OperatorAtom &a, const OperatorAtom &b) { return a.location < b.location; });
    dim_ = atoms_.front().effect.rows();
    Matrix sum = Matrix::Zero(dim_, dim_);
    for (const auto &a : atoms_) {
        if (a.effect.rows() != dim_ || a.effect.cols() != dim_) {
            throw Error(ErrorCode::DimensionMismatch, "operator atoms differ in dimension");
        }
        if (!std::isfinite(a.location) || !a.effect.allFinite()) {
            throw Error(ErrorCode::NonFinite, "operator atom is not finite");
        }
        sum += a.effect;
    }
    if (max_entry_distance(sum, Matrix::Identity(dim_, dim_)) > normalization_tolerance) {
        throw Error(ErrorCode::InvalidArgument, "operator measure effects do not sum to identity");
    }
}

AtomicPOVM::AtomicPOVM(const SpectralMeasureFD &spectral) : AtomicPOVM(spectral.atoms(), 1e-8) {}

DiscretizedPOVM::DiscretizedPOVM(std::vector<double> edges, std::vector<Matrix> effects,
                                 std::vector<double> reps, const PovmTolerance &tolerance)
    : edges_(std::move(edges)), effects_(std::move(effects)), reps_(std::move(reps)) {
    check_edges(edges_);
    if (effects_.size() != edges_.size() + 1 || reps_.size() != effects_.size()) {
        throw Error(ErrorCode::InvalidArgument,
                    "discretized POVM needs edges.size()+1 effects and representative points");
    }
    const Index dim = effects_.front().rows();
    if (dim < 1) {
        throw Error(ErrorCode::InvalidArgument, "discretized POVM effects are empty");
    }
    Matrix sum = Matrix::Zero(dim, dim);
    for (auto &e : effects_) {
        if (e.rows() != dim || e.cols() != dim) {
            throw Error(ErrorCode::DimensionMismatch, "POVM effects differ in dimension");
        }
        if (!e.allFinite()) {
            throw Error(ErrorCode::NonFinite, "POVM effect is not finite");
        }
        if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tolerance.positivity) {
            throw Error(ErrorCode::InvalidArgument, "POVM effect is not Hermitian");
        }
        e = (0.5 * (e + e.adjoint())).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> solver(e, Eigen::EigenvaluesOnly);
        const auto &ev = solver.eigenvalues();
        if (ev(0) < -tolerance.positivity || ev(ev.size() - 1) > 1.0 + tolerance.positivity) {
            std::ostringstream os;
            os << "POVM effect has eigenvalues outside [0, 1]: [" << ev(0) << ", "
               << ev(ev.size() - 1) << "]";
            throw Error(ErrorCode::InvalidArgument, os.str());
        }
        sum += e;
    }
    for (double r : reps_) {
        if (!std::isfinite(r)) {
            throw Error(ErrorCode::NonFinite, "representative point is not finite");
        }
    }
    const double dev = max_entry_distance(sum, Matrix::Identity(dim, dim));
    if (dev > tolerance.normalization) {
        std::ostringstream os;
        os << "POVM effects sum to identity only within " << dev;
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
}

std::size_t DiscretizedPOVM::bin_of(double x) const {
    return static_cast<std::size_t>(std::lower_bound(edges_.begin(), edges_.end(), x) -
                                    edges_.begin());
}

double DiscretizedPOVM::bin_lower(std::size_t bin) const {
    return bin == 0 ? -std::numeric_limits<double>::infinity() : edges_.at(bin - 1);
}

double DiscretizedPOVM::bin_upper(std::size_t bin) const {
    return bin >= edges_.size() ? std::numeric_limits<double>::infinity() : edges_.at(bin);
}

Matrix DiscretizedPOVM::total() const {
    Matrix sum = Matrix::Zero(dim(), dim());
    for (const auto &e : effects_) {
        sum += e;
    }
    return sum;
}

// ---------------------------------------------------------------------------

SpectralMeasureFD spectral_measure_of(const HermitianOperator &a, double degeneracy_tolerance) {
    return SpectralMeasureFD(decompose(a, degeneracy_tolerance));
}

ScalarMeasure bilinear_measure(const SpectralMeasureFD &e, const Vector &psi, const Vector &phi) {
    check_vector_dims(e.dim(), psi, phi);
    const auto &d = e.decomposition();
    std::vector<Atom> atoms;
    atoms.reserve(d.eigenvalues.size());
    for (std::size_t j = 0; j < d.eigenvalues.size(); ++j) {
        atoms.push_back({d.eigenvalues[j], psi.dot(d.projections[j] * phi)});
    }
    return ScalarMeasure(std::move(atoms));
}

ScalarMeasure bilinear_measure(const AtomicPOVM &e, const Vector &psi, const Vector &phi) {
    check_vector_dims(e.dim(), psi, phi);
    std::vector<Atom> atoms;
    atoms.reserve(e.atoms().size());
    for (const auto &a : e.atoms()) {
        atoms.push_back({a.location, psi.dot(a.effect * phi)});
    }
    return ScalarMeasure::from_unsorted_atoms(std::move(atoms));
}

ScalarMeasure bilinear_measure(const DiscretizedPOVM &e, const Vector &psi, const Vector &phi) {
    check_vector_dims(e.dim(), psi, phi);
    std::vector<Atom> atoms;
    atoms.reserve(e.bin_count());
    for (std::size_t b = 0; b < e.bin_count(); ++b) {
        atoms.push_back({e.reps()[b], psi.dot(e.effects()[b] * phi)});
    }
    return ScalarMeasure::from_unsorted_atoms(std::move(atoms));
}

std::vector<double> isolating_edges(std::vector<double> locations, double merge_tolerance) {
    std::sort(locations.begin(), locations.end());
    std::vector<double> distinct;
    for (double x : locations) {
        if (distinct.empty() || x - distinct.back() > merge_tolerance) {
            distinct.push_back(x);
        }
    }
    std::vector<double> edges;
    for (std::size_t i = 1; i < distinct.size(); ++i) {
        edges.push_back(0.5 * (distinct[i - 1] + distinct[i]));
    }
    return edges;
}

DiscretizedPOVM smear(const ProbabilityMeasure &mu, const AtomicPOVM &e, std::vector<double> edges) {
    check_edges(edges);
    const std::size_t bins = edges.size() + 1;
    const auto &atoms = e.atoms();
    const std::size_t count = atoms.size();
    const auto bin_of = [&edges](double x) {
        return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), x) -
                                        edges.begin());
    };

    // weight[b * count + j] = mu(bin_b - a_j)
    std::vector<double> weight(bins * count, 0.0);
    std::vector<std::vector<double>> bin_atoms(bins);
    std::vector<bool> has_density(bins, false);

    for (std::size_t j = 0; j < count; ++j) {
        const double a = atoms[j].location;
        for (const auto &x : mu.measure().atoms()) {
            const double w = x.weight.real();
            if (w == 0.0) {
                continue;
            }
            const double s = x.location + a;
            const std::size_t b = bin_of(s);
            weight[b * count + j] += w;
            bin_atoms[b].push_back(s);
        }
    }
    if (const auto &d = mu.measure().density(); d && !d->values.empty()) {
        const DensityCdf cdf(*d);
        for (std::size_t j = 0; j < count; ++j) {
            const double a = atoms[j].location;
            double previous = 0.0;
            for (std::size_t b = 0; b < bins; ++b) {
                const double upper = b < edges.size() ? cdf(edges[b] - a) : cdf.total();
                const double w = upper - previous;
                previous = upper;
                if (w > 0.0) {
                    weight[b * count + j] += w;
                    has_density[b] = true;
                }
            }
        }
    }

    const Index dim = e.dim();
    std::vector<Matrix> effects(bins, Matrix::Zero(dim, dim));
    std::vector<double> reps(bins, 0.0);
    for (std::size_t b = 0; b < bins; ++b) {
        for (std::size_t j = 0; j < count; ++j) {
            const double w = weight[b * count + j];
            if (w != 0.0) {
                effects[b] += w * atoms[j].effect;
            }
        }

        auto &locs = bin_atoms[b];
        std::sort(locs.begin(), locs.end());
        std::size_t distinct = 0;
        for (std::size_t i = 0; i < locs.size(); ++i) {
            if (i == 0 || locs[i] - locs[i - 1] > kLocationTolerance) {
                ++distinct;
            }
        }
        if (distinct == 1 && !has_density[b]) {
            reps[b] = locs.front();
        } else if (edges.empty()) {
            reps[b] = 0.0;
        } else if (b == 0) {
            reps[b] = edges.front();
        } else if (b == bins - 1) {
            reps[b] = edges.back();
        } else {
            reps[b] = 0.5 * (edges[b - 1] + edges[b]);
        }
    }
    return DiscretizedPOVM(std::move(edges), std::move(effects), std::move(reps));
}

DiscretizedPOVM smear(const ProbabilityMeasure &mu, const SpectralMeasureFD &e,
                      std::vector<double> edges) {
    return smear(mu, AtomicPOVM(e), std::move(edges));
}

DiscretizedPOVM bin_measure(const AtomicPOVM &e, std::vector<double> edges) {
    return smear(ProbabilityMeasure(ScalarMeasure::point_mass(0.0)), e, std::move(edges));
}

Operator moment_operator_direct(const DiscretizedPOVM &e, int k) {
    if (k < 0) {
        throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
    }
    Matrix out = Matrix::Zero(e.dim(), e.dim());
    for (std::size_t b = 0; b < e.bin_count(); ++b) {
        out += ipow(e.reps()[b], k) * e.effects()[b];
    }
    return Operator(std::move(out));
}

Operator moment_operator_binomial(const ProbabilityMeasure &mu, const HermitianOperator &a, int k,
                                  const MomentWindows &windows) {
    if (k < 0) {
        throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
    }
    std::vector<Complex> mu_moments(static_cast<std::size_t>(k) + 1);
    for (int n = 0; n <= k; ++n) {
        mu_moments[static_cast<std::size_t>(n)] = checked_moment(mu.measure(), n, windows);
    }
    Matrix out = Matrix::Zero(a.dim(), a.dim());
    Matrix power = Matrix::Identity(a.dim(), a.dim());
    for (int n = 0; n <= k; ++n) {
        out += binomial_coefficient(k, n) * mu_moments[static_cast<std::size_t>(k - n)] * power;
        power = (power * a.matrix()).eval();
    }
    return Operator(std::move(out));
}

ProbabilityMeasure state_distribution(const DensityOperator &t, const HermitianOperator &a,
                                      double degeneracy_tolerance) {
    if (t.dim() != a.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "state and observable differ in dimension");
    }
    const auto spectral = decompose(a, degeneracy_tolerance);
    std::vector<Atom> atoms;
    atoms.reserve(spectral.eigenvalues.size());
    double total = 0.0;
    for (std::size_t j = 0; j < spectral.eigenvalues.size(); ++j) {
        const double w = std::max(0.0, t.matrix().cwiseProduct(spectral.projections[j].transpose()).sum().real());
        atoms.push_back({spectral.eigenvalues[j], w});
        total += w;
    }
    for (auto &x : atoms) {
        x.weight /= total;
    }
    return ProbabilityMeasure(ScalarMeasure(std::move(atoms)));
}

HsMomentDiagnostic hs_moment_diagnostic(const DensityOperator &t, const HermitianOperator &a, int k) {
    if (k < 0) {
        throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
    }
    if (t.dim() != a.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "state and observable differ in dimension");
    }
    const double half = 0.5 * static_cast<double>(k);
    const auto root_power = apply_function(a, [half](double x) { return std::pow(std::abs(x), half); });
    const double hs = std::pow(hs_norm(root_power.matrix() * sqrt_psd(t)), 2);

    const auto spectral = decompose(a);
    double moment = 0.0;
    for (std::size_t j = 0; j < spectral.eigenvalues.size(); ++j) {
        const double w = t.matrix().cwiseProduct(spectral.projections[j].transpose()).sum().real();
        moment += std::pow(std::abs(spectral.eigenvalues[j]), static_cast<double>(k)) * w;
    }
    return {hs, moment};
}

double trace_moment(const DensityOperator &t, const HermitianOperator &a, int m) {
    if (t.dim() != a.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "state and observable differ in dimension");
    }
    const Complex tr = trace_pairing(Operator(matrix_power(a.matrix(), m)), t);
    if (std::abs(tr.imag()) > 1e-10 * std::max(1.0, std::abs(tr.real()))) {
        throw Error(ErrorCode::NumericalFailure, "Tr[A^m T] has a non-negligible imaginary part");
    }
    return tr.real();
}

std::vector<double> bin_probabilities(const DiscretizedPOVM &e, const DensityOperator &rho) {
    if (e.dim() != rho.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "state and POVM differ in dimension");
    }
    std::vector<double> p;
    p.reserve(e.bin_count());
    for (const auto &effect : e.effects()) {
        p.push_back(rho.matrix().cwiseProduct(effect.transpose()).sum().real());
    }
    return p;
}

} // namespace smearlab
