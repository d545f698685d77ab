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

#include "smearlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace smearlab {

namespace {

bool is_finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double ipow(double x, int k) noexcept {
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= x;
    }
    return r;
}

// Neumaier summation; long density grids otherwise lose the unit mass to rounding.
Complex compensated_sum(const std::vector<Complex> &values) noexcept {
    double sum[2] = {0.0, 0.0};
    double carry[2] = {0.0, 0.0};
    for (const auto &v : values) {
        const double parts[2] = {v.real(), v.imag()};
        for (int c = 0; c < 2; ++c) {
            const double t = sum[c] + parts[c];
            carry[c] += std::abs(sum[c]) >= std::abs(parts[c]) ? (sum[c] - t) + parts[c]
                                                               : (parts[c] - t) + sum[c];
            sum[c] = t;
        }
    }
    return {sum[0] + carry[0], sum[1] + carry[1]};
}

void validate_density(const GridDensity &d) {
    if (!std::isfinite(d.origin) || !std::isfinite(d.step) || !(d.step > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "density grid needs a finite origin and step > 0");
    }
    for (const auto &v : d.values) {
        if (!is_finite(v)) {
            throw Error(ErrorCode::NonFinite, "density value is not finite");
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// ScalarMeasure

ScalarMeasure::ScalarMeasure(std::vector<Atom> atoms, std::optional<GridDensity> density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (!std::isfinite(atoms_[i].location) || !is_finite(atoms_[i].weight)) {
            throw Error(ErrorCode::NonFinite, "atom location or weight is not finite");
        }
        if (i > 0 && !(atoms_[i].location > atoms_[i - 1].location)) {
            throw Error(ErrorCode::InvalidArgument, "atom locations must be strictly increasing");
        }
    }
    if (density_) {
        validate_density(*density_);
    }
}

ScalarMeasure ScalarMeasure::from_unsorted_atoms(std::vector<Atom> atoms, double merge_tolerance) {
    std::stable_sort(atoms.begin(), atoms.end(),
                     [](const Atom &a, const Atom &b) { return a.location < b.location; });
    std::vector<Atom> merged;
    merged.reserve(atoms.size());
    double group_start = 0.0;
    for (const auto &a : atoms) {
        if (!merged.empty() && a.location - group_start <= merge_tolerance) {
            merged.back().weight += a.weight;
        } else {
            merged.push_back(a);
            group_start = a.location;
        }
    }
    return ScalarMeasure(std::move(merged));
}

ScalarMeasure ScalarMeasure::point_mass(double location, Complex weight) {
    return ScalarMeasure({Atom{location, weight}});
}

ScalarMeasure ScalarMeasure::from_density(GridDensity density) {
    return ScalarMeasure({}, std::move(density));
}

Complex ScalarMeasure::total_mass() const noexcept {
    Complex m = 0.0;
    for (const auto &a : atoms_) {
        m += a.weight;
    }
    if (density_) {
        m += density_->step * compensated_sum(density_->values);
    }
    return m;
}

double ScalarMeasure::support_radius() const noexcept {
    double r = 0.0;
    for (const auto &a : atoms_) {
        r = std::max(r, std::abs(a.location));
    }
    if (density_ && !density_->values.empty()) {
        r = std::max({r, std::abs(density_->origin), std::abs(density_->upper())});
    }
    return r;
}

Complex ScalarMeasure::atom_weight_at(double location, double tolerance) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), location - tolerance,
                               [](const Atom &a, double x) { return a.location < x; });
    if (it != atoms_.end() && std::abs(it->location - location) <= tolerance) {
        return it->weight;
    }
    return 0.0;
}

Complex ScalarMeasure::interval_mass(double lower, double upper) const {
    Complex m = 0.0;
    if (!(upper > lower)) {
        return m;
    }
    for (const auto &a : atoms_) {
        if (a.location > lower && a.location <= upper) {
            m += a.weight;
        }
    }
    if (density_) {
        const auto &d = *density_;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double lo = std::max(lower, d.cell_lower(i));
            const double hi = std::min(upper, d.cell_lower(i) + d.step);
            if (hi > lo) {
                m += (hi - lo) * d.values[i];
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// ProbabilityMeasure

ProbabilityMeasure::ProbabilityMeasure(ScalarMeasure measure) : measure_(std::move(measure)) {
    for (const auto &a : measure_.atoms()) {
        if (a.weight.imag() != 0.0 || a.weight.real() < 0.0) {
            throw Error(ErrorCode::InvalidArgument,
                        "probability measure atoms need real nonnegative weights");
        }
    }
    if (const auto &d = measure_.density()) {
        for (const auto &v : d->values) {
            if (v.imag() != 0.0 || v.real() < 0.0) {
                throw Error(ErrorCode::InvalidArgument,
                            "probability measure density needs real nonnegative values");
            }
        }
    }
    const Complex mass = measure_.total_mass();
    if (std::abs(mass - 1.0) > kMassTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "probability measure has total mass " << mass.real();
        throw Error(ErrorCode::InvalidArgument, os.str());
    }

    atom_cdf_.reserve(measure_.atoms().size());
    double acc = 0.0;
    for (const auto &a : measure_.atoms()) {
        acc += a.weight.real();
        atom_cdf_.push_back(acc);
    }
    if (const auto &d = measure_.density()) {
        density_cdf_.reserve(d->size() + 1);
        density_cdf_.push_back(0.0);
        acc = 0.0;
        for (const auto &v : d->values) {
            acc += d->step * v.real();
            density_cdf_.push_back(acc);
        }
    }
}

double ProbabilityMeasure::cdf(double t) const {
    double f = 0.0;
    const auto &atoms = measure_.atoms();
    auto it = std::upper_bound(atoms.begin(), atoms.end(), t,
                               [](double x, const Atom &a) { return x < a.location; });
    if (it != atoms.begin()) {
        f += atom_cdf_[static_cast<std::size_t>(it - atoms.begin()) - 1];
    }
    if (const auto &d = measure_.density(); d && !d->values.empty()) {
        const double u = (t - d->origin) / d->step;
        if (u >= static_cast<double>(d->size())) {
            f += density_cdf_.back();
        } else if (u > 0.0) {
            const auto cell = static_cast<std::size_t>(u);
            const double frac = u - static_cast<double>(cell);
            f += density_cdf_[cell] + frac * d->step * d->values[cell].real();
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Factories

namespace {

std::size_t cell_count(double lower, double upper, double step) {
    if (!(upper > lower) || !(step > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "grid needs lower < upper and step > 0");
    }
    const double n = std::round((upper - lower) / step);
    if (n < 1.0 || n > 1e9) {
        throw Error(ErrorCode::GridOverflow, "grid cell count out of range");
    }
    return static_cast<std::size_t>(n);
}

ProbabilityMeasure normalised(GridDensity d) {
    const double mass = d.step * compensated_sum(d.values).real();
    if (!(mass > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "density has no mass on the requested grid");
    }
    for (auto &v : d.values) {
        v /= mass;
    }
    return ProbabilityMeasure(ScalarMeasure::from_density(std::move(d)));
}

// Standard normal probability of [a, b], accurate in both tails.
double normal_interval(double a, double b) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    if (a >= 0.0) {
        return 0.5 * (std::erfc(a * inv_sqrt2) - std::erfc(b * inv_sqrt2));
    }
    if (b <= 0.0) {
        return 0.5 * (std::erfc(-b * inv_sqrt2) - std::erfc(-a * inv_sqrt2));
    }
    return 0.5 * (std::erf(b * inv_sqrt2) - std::erf(a * inv_sqrt2));
}

} // namespace

ProbabilityMeasure gaussian_density(double mean, double variance, double lower, double upper,
                                    double step) {
    if (!(variance > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "gaussian variance must be positive");
    }
    const std::size_t n = cell_count(lower, upper, step);
    const double sd = std::sqrt(variance);
    GridDensity d{lower, step, std::vector<Complex>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double a = (d.cell_lower(i) - mean) / sd;
        const double b = (d.cell_lower(i) + step - mean) / sd;
        d.values[i] = normal_interval(a, b) / step;
    }
    return normalised(std::move(d));
}

ProbabilityMeasure uniform_density(double lower, double upper, double step) {
    const std::size_t n = cell_count(lower, upper, step);
    GridDensity d{lower, step, std::vector<Complex>(n, Complex(1.0))};
    return normalised(std::move(d));
}

ProbabilityMeasure power_tail_density(double exponent, double half_width, double step) {
    if (!(exponent > 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "power tail exponent must exceed 1");
    }
    const std::size_t n = cell_count(-half_width, half_width, step);
    // Antiderivative of (1+x)^(-e) on x >= 0, measured from 0.
    const auto tail = [exponent](double x) {
        return (1.0 - std::pow(1.0 + x, 1.0 - exponent)) / (exponent - 1.0);
    };
    const auto mass = [&](double a, double b) {
        if (a >= 0.0) {
            return tail(b) - tail(a);
        }
        if (b <= 0.0) {
            return tail(-a) - tail(-b);
        }
        return tail(-a) + tail(b);
    };
    GridDensity d{-half_width, step, std::vector<Complex>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double a = d.cell_lower(i);
        d.values[i] = mass(a, a + step) / step;
    }
    return normalised(std::move(d));
}

ProbabilityMeasure discrete_uniform(std::vector<double> locations) {
    if (locations.empty()) {
        throw Error(ErrorCode::InvalidArgument, "discrete_uniform needs at least one location");
    }
    const double w = 1.0 / static_cast<double>(locations.size());
    std::vector<Atom> atoms;
    atoms.reserve(locations.size());
    for (double x : locations) {
        atoms.push_back({x, w});
    }
    return ProbabilityMeasure(ScalarMeasure::from_unsorted_atoms(std::move(atoms)));
}

// ---------------------------------------------------------------------------
// Total variation and convolution

double total_variation(const ScalarMeasure &mu) noexcept {
    double tv = 0.0;
    for (const auto &a : mu.atoms()) {
        tv += std::abs(a.weight);
    }
    if (const auto &d = mu.density()) {
        double s = 0.0;
        for (const auto &v : d->values) {
            s += std::abs(v);
        }
        tv += d->step * s;
    }
    return tv;
}

namespace {

struct GridComponent {
    double origin;
    std::vector<Complex> values;
};

std::vector<Complex> discrete_convolution(const std::vector<Complex> &a,
                                          const std::vector<Complex> &b, double scale) {
    std::vector<Complex> out(a.size() + b.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == Complex(0.0)) {
            continue;
        }
        const Complex ai = scale * a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += ai * b[j];
        }
    }
    return out;
}

} // namespace

ScalarMeasure convolve(const ScalarMeasure &mu, const ScalarMeasure &nu,
                       const ConvolutionOptions &options) {
    std::vector<Atom> pairs;
    pairs.reserve(mu.atoms().size() * nu.atoms().size());
    for (const auto &x : mu.atoms()) {
        for (const auto &y : nu.atoms()) {
            pairs.push_back({x.location + y.location, x.weight * y.weight});
        }
    }
    ScalarMeasure atom_part = ScalarMeasure::from_unsorted_atoms(std::move(pairs),
                                                                 options.merge_tolerance);

    const auto &dmu = mu.density();
    const auto &dnu = nu.density();
    if (!dmu && !dnu) {
        return atom_part;
    }

    double step = 0.0;
    if (dmu && dnu) {
        if (std::abs(dmu->step - dnu->step) > 1e-12 * dmu->step) {
            throw Error(ErrorCode::GridIncompatible,
                        "cannot convolve densities on grids with different steps");
        }
        step = dmu->step;
    } else {
        step = dmu ? dmu->step : dnu->step;
    }

    std::vector<GridComponent> components;
    if (dnu) {
        for (const auto &x : mu.atoms()) {
            GridComponent c{dnu->origin + x.location, dnu->values};
            for (auto &v : c.values) {
                v *= x.weight;
            }
            components.push_back(std::move(c));
        }
    }
    if (dmu) {
        for (const auto &y : nu.atoms()) {
            GridComponent c{dmu->origin + y.location, dmu->values};
            for (auto &v : c.values) {
                v *= y.weight;
            }
            components.push_back(std::move(c));
        }
    }
    if (dmu && dnu && !dmu->values.empty() && !dnu->values.empty()) {
        if (dmu->size() + dnu->size() - 1 > options.max_grid_cells) {
            throw Error(ErrorCode::GridOverflow, "convolved grid exceeds the configured maximum");
        }
        // Cell i of mu and cell j of nu have midpoints summing to
        // origin_mu + origin_nu + (i + j + 1) * step.
        components.push_back({dmu->origin + dnu->origin + 0.5 * step,
                              discrete_convolution(dmu->values, dnu->values, step)});
    }

    if (components.empty()) {
        return atom_part;
    }

    double reference = components.front().origin;
    for (const auto &c : components) {
        reference = std::min(reference, c.origin);
    }
    std::size_t length = 0;
    std::vector<std::size_t> offsets;
    offsets.reserve(components.size());
    for (const auto &c : components) {
        const double shift = (c.origin - reference) / step;
        const double rounded = std::round(shift);
        if (std::abs(shift - rounded) > options.grid_alignment_tolerance * std::max(1.0, rounded)) {
            throw Error(ErrorCode::GridIncompatible,
                        "shifted density grids do not share a common lattice");
        }
        if (rounded + static_cast<double>(c.values.size()) >
            static_cast<double>(options.max_grid_cells)) {
            throw Error(ErrorCode::GridOverflow, "convolved grid exceeds the configured maximum");
        }
        const auto offset = static_cast<std::size_t>(rounded);
        offsets.push_back(offset);
        length = std::max(length, offset + c.values.size());
    }

    GridDensity combined{reference, step, std::vector<Complex>(length, Complex(0.0))};
    for (std::size_t c = 0; c < components.size(); ++c) {
        const auto &vals = components[c].values;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            combined.values[offsets[c] + i] += vals[i];
        }
    }
    return ScalarMeasure(atom_part.atoms(), std::move(combined));
}

// ---------------------------------------------------------------------------
// Moments

std::string_view to_string(MomentVerdict verdict) noexcept {
    switch (verdict) {
    case MomentVerdict::Converged:
        return "converged";
    case MomentVerdict::Diverging:
        return "diverging";
    case MomentVerdict::Undetermined:
        return "undetermined";
    }
    return "undetermined";
}

Complex MomentReport::value() const {
    if (windows.empty()) {
        throw Error(ErrorCode::InvalidArgument, "moment report has no windows");
    }
    return windows.back().partial;
}

std::vector<double> default_radii(const ScalarMeasure &mu) {
    double s = mu.support_radius();
    if (!(s > 0.0)) {
        s = 1.0;
    }
    return {s / 8.0, s / 4.0, s / 2.0, s, 2.0 * s};
}

namespace {

MomentVerdict classify(const std::vector<MomentWindow> &w, const ConvergenceCriteria &c) {
    const std::size_t n = w.size();
    if (n >= 2) {
        const double last = w[n - 1].partial_absolute;
        const double diff = std::abs(last - w[n - 2].partial_absolute);
        if (diff == 0.0 || diff < c.relative_tolerance * std::abs(last)) {
            return MomentVerdict::Converged;
        }
    }
    if (c.growth_windows >= 2 && n >= c.growth_windows) {
        bool growing = true;
        for (std::size_t i = n - c.growth_windows + 1; i < n; ++i) {
            const double prev = w[i - 1].partial_absolute;
            if (!(prev > 0.0) || w[i].partial_absolute < (1.0 + c.growth_threshold) * prev) {
                growing = false;
                break;
            }
        }
        if (growing) {
            return MomentVerdict::Diverging;
        }
    }
    return MomentVerdict::Undetermined;
}

struct Contribution {
    double distance;
    Complex term;
    double absolute_term;
};

} // namespace

MomentReport moment(const ScalarMeasure &mu, int k, const std::vector<double> &radii,
                    const ConvergenceCriteria &criteria) {
    if (k < 0) {
        throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
    }
    if (radii.empty()) {
        throw Error(ErrorCode::InvalidArgument, "moment needs at least one window radius");
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!std::isfinite(radii[i]) || radii[i] < 0.0 || (i > 0 && !(radii[i] > radii[i - 1]))) {
            throw Error(ErrorCode::InvalidArgument,
                        "window radii must be finite, nonnegative and strictly increasing");
        }
    }

    std::vector<Contribution> contributions;
    contributions.reserve(mu.atoms().size() + (mu.density() ? mu.density()->size() : 0));
    for (const auto &a : mu.atoms()) {
        const double xk = ipow(a.location, k);
        contributions.push_back(
            {std::abs(a.location), xk * a.weight, std::abs(xk) * std::abs(a.weight)});
    }
    if (const auto &d = mu.density()) {
        for (std::size_t i = 0; i < d->size(); ++i) {
            const double x = d->cell_midpoint(i);
            const double xk = ipow(x, k);
            contributions.push_back({std::abs(x), d->step * xk * d->values[i],
                                     d->step * std::abs(xk) * std::abs(d->values[i])});
        }
    }
    std::stable_sort(contributions.begin(), contributions.end(),
                     [](const Contribution &a, const Contribution &b) {
                         return a.distance < b.distance;
                     });

    MomentReport report;
    report.order = k;
    report.windows.reserve(radii.size());
    Complex partial = 0.0;
    double partial_abs = 0.0;
    std::size_t next = 0;
    for (double r : radii) {
        while (next < contributions.size() && contributions[next].distance <= r) {
            partial += contributions[next].term;
            partial_abs += contributions[next].absolute_term;
            ++next;
        }
        report.windows.push_back({r, partial, partial_abs});
    }
    report.verdict = classify(report.windows, criteria);
    return report;
}

Complex checked_moment(const ScalarMeasure &mu, int k, const MomentWindows &windows) {
    const auto radii = windows.radii.empty() ? default_radii(mu) : windows.radii;
    MomentReport report = moment(mu, k, radii, windows.criteria);
    if (report.verdict != MomentVerdict::Converged) {
        std::ostringstream os;
        os << "moment of order " << k << " is " << to_string(report.verdict)
           << " over windows up to R=" << radii.back();
        throw NonconvergedMoment(os.str(), std::move(report));
    }
    return report.value();
}

double binomial_coefficient(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(c);
}

Complex binomial_convolution_moment(const ScalarMeasure &mu, const ScalarMeasure &nu, int k,
                                    const MomentWindows &windows) {
    if (k < 0) {
        throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
    }
    std::vector<Complex> mu_moments(static_cast<std::size_t>(k) + 1);
    std::vector<Complex> nu_moments(static_cast<std::size_t>(k) + 1);
    for (int n = 0; n <= k; ++n) {
        mu_moments[static_cast<std::size_t>(n)] = checked_moment(mu, n, windows);
        nu_moments[static_cast<std::size_t>(n)] = checked_moment(nu, n, windows);
    }
    Complex total = 0.0;
    for (int n = 0; n <= k; ++n) {
        total += binomial_coefficient(k, n) * mu_moments[static_cast<std::size_t>(k - n)] *
                 nu_moments[static_cast<std::size_t>(n)];
    }
    return total;
}

Complex integrate(const RealFunction &f, const ScalarMeasure &mu) {
    Complex total = 0.0;
    for (const auto &a : mu.atoms()) {
        const Complex v = f(a.location);
        if (!is_finite(v)) {
            throw Error(ErrorCode::NonFinite, "integrand is not finite at an atom");
        }
        total += v * a.weight;
    }
    if (const auto &d = mu.density()) {
        Complex s = 0.0;
        for (std::size_t i = 0; i < d->size(); ++i) {
            const Complex v = f(d->cell_midpoint(i));
            if (!is_finite(v)) {
                throw Error(ErrorCode::NonFinite, "integrand is not finite at a cell midpoint");
            }
            s += v * d->values[i];
        }
        total += d->step * s;
    }
    return total;
}

} // namespace smearlab
