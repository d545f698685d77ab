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

#include "smearlab/phase_space.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

#include "quadrature.hpp"

namespace smearlab {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_fock_dim(Index n) {
    if (n < 2 || n > kMaxDimension) {
        std::ostringstream os;
        os << "Fock dimension " << n << " outside [2, " << kMaxDimension << "]";
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
}

// Phase factors e^{i s theta k}, k = 0..n-1.
Vector phases(Index n, double theta, double s) {
    Vector out(n);
    for (Index k = 0; k < n; ++k) {
        out(k) = std::polar(1.0, s * theta * static_cast<double>(k));
    }
    return out;
}

// Highest Fock level carrying weight in T.
Index occupied_levels(const DensityOperator &t) {
    Index top = 0;
    for (Index k = 0; k < t.dim(); ++k) {
        if (std::abs(t.matrix()(k, k)) > 1e-14) {
            top = k;
        }
    }
    return top;
}

DiscretizedPOVM marginal(const PhaseSpacePOVM &e, bool along_q) {
    const int m = e.points_per_axis();
    const Index n = e.dim();
    std::vector<Matrix> effects(static_cast<std::size_t>(m) + 2, Matrix::Zero(n, n));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            effects[static_cast<std::size_t>(i) + 1] += along_q ? e.effect(i, j) : e.effect(j, i);
        }
    }
    const Matrix half_deficiency = 0.5 * e.deficiency();
    effects.front() += half_deficiency;
    effects.back() += half_deficiency;

    std::vector<double> reps;
    reps.reserve(effects.size());
    reps.push_back(-e.grid().half_width);
    for (int i = 0; i < m; ++i) {
        reps.push_back(e.grid().cell_midpoint(i));
    }
    reps.push_back(e.grid().half_width);
    return DiscretizedPOVM(e.grid().edges(), std::move(effects), std::move(reps),
                           PovmTolerance{1e-6, 1e-6});
}

// Values c_k psi_k(x) with c_k = 1 (position) or (-i)^k (momentum).
void hermite_row(double x, Quadrature quadrature, Vector &out) {
    const Index n = out.size();
    Eigen::VectorXd psi(n);
    psi(0) = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n > 1) {
        psi(1) = std::sqrt(2.0) * x * psi(0);
    }
    for (Index k = 1; k + 1 < n; ++k) {
        const double kk = static_cast<double>(k);
        psi(k + 1) = std::sqrt(2.0 / (kk + 1.0)) * x * psi(k) - std::sqrt(kk / (kk + 1.0)) * psi(k - 1);
    }
    static const Complex minus_i_powers[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (Index k = 0; k < n; ++k) {
        out(k) = quadrature == Quadrature::Position ? Complex(psi(k)) : psi(k) * minus_i_powers[k % 4];
    }
}

double block_distance(const Matrix &a, const Matrix &b, Index block) {
    return max_entry_distance(a.topLeftCorner(block, block), b.topLeftCorner(block, block));
}

} // namespace

std::string_view to_string(Quadrature quadrature) noexcept {
    return quadrature == Quadrature::Position ? "position" : "momentum";
}

Operator lowering_operator(Index n) {
    check_fock_dim(n);
    Matrix a = Matrix::Zero(n, n);
    for (Index k = 1; k < n; ++k) {
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    return Operator(std::move(a));
}

HermitianOperator position_operator(Index n) {
    const Matrix a = lowering_operator(n).matrix();
    return HermitianOperator((a + a.adjoint()) / std::sqrt(2.0));
}

HermitianOperator momentum_operator(Index n) {
    const Matrix a = lowering_operator(n).matrix();
    return HermitianOperator((a - a.adjoint()) / (kI * std::sqrt(2.0)));
}

HermitianOperator quadrature_operator(Index n, Quadrature quadrature) {
    return quadrature == Quadrature::Position ? position_operator(n) : momentum_operator(n);
}

Operator weyl(double q, double p, Index n) {
    if (!std::isfinite(q) || !std::isfinite(p)) {
        throw Error(ErrorCode::NonFinite, "displacement is not finite");
    }
    const Matrix generator =
        kI * (p * position_operator(n).matrix() - q * momentum_operator(n).matrix());
    return Operator(generator.exp());
}

Vector coherent_vector(Index n, double q, double p) {
    check_fock_dim(n);
    const Complex alpha = Complex(q, p) / std::sqrt(2.0);
    Vector v(n);
    v(0) = std::exp(-0.5 * std::norm(alpha));
    for (Index k = 1; k < n; ++k) {
        v(k) = v(k - 1) * alpha / std::sqrt(static_cast<double>(k));
    }
    return v / v.norm();
}

Vector squeezed_vacuum_vector(Index n, double r) {
    check_fock_dim(n);
    const double t = std::tanh(r);
    Vector v = Vector::Zero(n);
    double c = 1.0 / std::sqrt(std::cosh(r));
    for (Index k = 0; 2 * k < n; ++k) {
        v(2 * k) = c;
        // c_{k+1} / c_k = -t sqrt((2k+1)(2k+2)) / (2(k+1))
        const double kk = static_cast<double>(k);
        c *= -t * std::sqrt((2.0 * kk + 1.0) * (2.0 * kk + 2.0)) / (2.0 * (kk + 1.0));
    }
    return v / v.norm();
}

Operator fourier_operator(Index n) {
    check_fock_dim(n);
    return Operator(phases(n, -0.5 * std::numbers::pi, 1.0).asDiagonal().toDenseMatrix());
}

DisplacementEngine::DisplacementEngine(Index n) {
    check_fock_dim(n);
    const RealMatrix q = position_operator(n).matrix().real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(q);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalFailure, "eigensolver failed on the position operator");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Matrix DisplacementEngine::apply(double q, double p, const Matrix &v) const {
    if (v.rows() != dim()) {
        throw Error(ErrorCode::DimensionMismatch, "vector dimension does not match the engine");
    }
    const double rho = std::hypot(q, p);
    const double theta = std::atan2(-q, p);
    const Vector rotate = phases(dim(), theta, -1.0);
    Matrix x = rotate.asDiagonal() * v;
    Matrix y = eigenvectors_.transpose().cast<Complex>() * x;
    for (Index k = 0; k < dim(); ++k) {
        y.row(k) *= std::polar(1.0, rho * eigenvalues_(k));
    }
    x.noalias() = eigenvectors_.cast<Complex>() * y;
    return rotate.conjugate().asDiagonal() * x;
}

Matrix DisplacementEngine::weyl(double q, double p) const {
    return apply(q, p, Matrix::Identity(dim(), dim()));
}

void PhaseSpaceGrid::validate() const {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw Error(ErrorCode::InvalidArgument, "phase-space half-width must be positive");
    }
    if (points_per_axis < 2 || points_per_axis > 256) {
        throw Error(ErrorCode::InvalidArgument, "points per axis must be in [2, 256]");
    }
}

std::vector<double> PhaseSpaceGrid::edges() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points_per_axis) + 1);
    for (int i = 0; i <= points_per_axis; ++i) {
        out.push_back(cell_lower(i));
    }
    out.back() = half_width;
    return out;
}

Index displacement_dimension(Index n, const PhaseSpaceGrid &grid, const PhaseSpaceOptions &options) {
    if (options.displacement_padding >= 0) {
        return std::min<Index>(kMaxDimension, n + options.displacement_padding);
    }
    const double reach = std::sqrt(static_cast<double>(n - 1)) + grid.half_width;
    const double wanted = reach * reach + 10.0 * reach + 20.0;
    return std::clamp<Index>(static_cast<Index>(std::ceil(wanted)), n, kMaxDimension);
}

PhaseSpacePOVM::PhaseSpacePOVM(PhaseSpaceGrid grid, std::vector<Matrix> effects,
                               std::vector<std::string> warnings)
    : grid_(grid), effects_(std::move(effects)), warnings_(std::move(warnings)) {
    grid_.validate();
    const auto m = static_cast<std::size_t>(grid_.points_per_axis);
    if (effects_.size() != m * m) {
        throw Error(ErrorCode::InvalidArgument, "phase-space POVM needs m*m effects");
    }
    for (const auto &e : effects_) {
        if (e.rows() != effects_.front().rows() || e.cols() != e.rows()) {
            throw Error(ErrorCode::DimensionMismatch, "phase-space effects differ in dimension");
        }
    }
}

Matrix PhaseSpacePOVM::total() const {
    Matrix sum = Matrix::Zero(dim(), dim());
    for (const auto &e : effects_) {
        sum += e;
    }
    return sum;
}

Matrix PhaseSpacePOVM::deficiency() const { return Matrix::Identity(dim(), dim()) - total(); }

double PhaseSpacePOVM::captured_mass() const {
    return total().trace().real() / static_cast<double>(dim());
}

double PhaseSpacePOVM::captured_mass(const DensityOperator &rho) const {
    return trace_pairing(rho, Operator(total())).real();
}

PhaseSpacePOVM build_phase_space_povm(const DensityOperator &t, const PhaseSpaceGrid &grid,
                                      const PhaseSpaceOptions &options) {
    grid.validate();
    const Index n = t.dim();
    check_fock_dim(n);
    const int m = grid.points_per_axis;
    const auto rule = detail::gauss_legendre(options.quadrature_order);
    std::vector<std::string> warnings;
    if (grid.cell_area() > 1.0) {
        warnings.emplace_back("grid cells larger than unit area");
    }

    const Index top = options.displacement_padding < 0 ? occupied_levels(t) + 1 : n;
    Index work = displacement_dimension(top, grid, options);
    work = std::max(work, n);
    if (options.displacement_padding < 0) {
        const double reach = std::sqrt(static_cast<double>(top - 1)) + grid.half_width;
        if (reach * reach + 10.0 * reach + 20.0 > static_cast<double>(work)) {
            warnings.emplace_back("displacement working space capped below the grid reach");
        }
    } else if (grid.half_width * grid.half_width > 0.5 * static_cast<double>(work)) {
        warnings.emplace_back("grid reaches |alpha|^2 comparable to the working dimension");
    }

    // T = sum_r lambda_r v_r v_r^dagger, embedded in the working space.
    Eigen::SelfAdjointEigenSolver<Matrix> solver(t.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalFailure, "eigensolver failed on the state");
    }
    std::vector<Index> kept;
    for (Index r = 0; r < n; ++r) {
        if (solver.eigenvalues()(r) > 1e-15) {
            kept.push_back(r);
        }
    }
    const auto rank = static_cast<Index>(kept.size());
    Matrix vectors = Matrix::Zero(work, rank);
    for (Index c = 0; c < rank; ++c) {
        vectors.col(c).head(n) =
            std::sqrt(solver.eigenvalues()(kept[static_cast<std::size_t>(c)])) *
            solver.eigenvectors().col(kept[static_cast<std::size_t>(c)]);
    }

    const DisplacementEngine engine(work);
    const double h = grid.cell_width();
    const auto order = static_cast<Index>(rule.nodes.size());
    const double scale = 1.0 / (2.0 * std::numbers::pi);

    std::vector<Matrix> effects(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    std::atomic<int> next_row{0};
    auto worker = [&]() {
        Matrix columns(n, order * order * rank);
        for (int i = next_row.fetch_add(1); i < m; i = next_row.fetch_add(1)) {
            for (int j = 0; j < m; ++j) {
                Index col = 0;
                for (Index a = 0; a < order; ++a) {
                    const double q = grid.cell_lower(i) + 0.5 * h * (rule.nodes[a] + 1.0);
                    for (Index b = 0; b < order; ++b) {
                        const double p = grid.cell_lower(j) + 0.5 * h * (rule.nodes[b] + 1.0);
                        const double w = 0.25 * h * h * rule.weights[a] * rule.weights[b] * scale;
                        const Matrix moved = engine.apply(q, p, vectors);
                        columns.middleCols(col, rank) = std::sqrt(w) * moved.topRows(n);
                        col += rank;
                    }
                }
                Matrix e = columns * columns.adjoint();
                effects[static_cast<std::size_t>(i) * m + j] = 0.5 * (e + e.adjoint());
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp(threads, 1U, static_cast<unsigned>(m));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) {
            pool.emplace_back(worker);
        }
    }
    return PhaseSpacePOVM(grid, std::move(effects), std::move(warnings));
}

DiscretizedPOVM marginal_x(const PhaseSpacePOVM &e) { return marginal(e, true); }

DiscretizedPOVM marginal_y(const PhaseSpacePOVM &e) { return marginal(e, false); }

Operator marginal_moment_operator(const DensityOperator &t, int k, Quadrature quadrature) {
    if (k < 0) {
        throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
    }
    const auto x = quadrature_operator(t.dim(), quadrature);
    Matrix out = Matrix::Zero(t.dim(), t.dim());
    Matrix power = Matrix::Identity(t.dim(), t.dim());
    for (int j = 0; j <= k; ++j) {
        const double sign = (k - j) % 2 == 0 ? 1.0 : -1.0;
        out += binomial_coefficient(k, j) * sign * trace_moment(t, x, k - j) * power;
        power = (power * x.matrix()).eval();
    }
    return Operator(std::move(out));
}

ProbabilityMeasure position_distribution(const DensityOperator &t, Quadrature quadrature,
                                         bool reflect, double step, double half_width) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
    }
    const Index n = t.dim();
    if (half_width <= 0.0) {
        half_width = std::sqrt(2.0 * static_cast<double>(n) + 1.0) + 8.0;
    }
    const auto cells = static_cast<std::size_t>(std::ceil(2.0 * half_width / step));
    if (cells > (std::size_t{1} << 24)) {
        throw Error(ErrorCode::GridOverflow, "position grid has too many cells");
    }
    const auto rule = detail::gauss_legendre(3);
    GridDensity d;
    d.origin = -0.5 * static_cast<double>(cells) * step;
    d.step = step;
    d.values.resize(cells);
    Vector w(n);
    double total = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
        double avg = 0.0;
        for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
            const double x = d.cell_lower(c) + 0.5 * step * (rule.nodes[a] + 1.0);
            hermite_row(x, quadrature, w);
            const double value = (w.transpose() * t.matrix() * w.conjugate()).value().real();
            avg += 0.5 * rule.weights[a] * value;
        }
        avg = std::max(avg, 0.0);
        d.values[c] = avg;
        total += avg * step;
    }
    for (auto &v : d.values) {
        v /= total;
    }
    if (reflect) {
        std::reverse(d.values.begin(), d.values.end());
        d.origin = -d.upper();
    }
    return ProbabilityMeasure(ScalarMeasure::from_density(std::move(d)));
}

AtomicPOVM compressed_quadrature_measure(Index n, Index ambient, Quadrature quadrature) {
    check_fock_dim(n);
    if (ambient < n || ambient > kMaxDimension) {
        throw Error(ErrorCode::InvalidArgument, "ambient dimension must lie in [n, kMaxDimension]");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(quadrature_operator(ambient, quadrature).matrix());
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalFailure, "eigensolver failed on the quadrature operator");
    }
    std::vector<OperatorAtom> atoms;
    atoms.reserve(static_cast<std::size_t>(ambient));
    for (Index j = 0; j < ambient; ++j) {
        const Vector v = solver.eigenvectors().col(j).head(n);
        atoms.push_back({solver.eigenvalues()(j), v * v.adjoint()});
    }
    return AtomicPOVM(std::move(atoms));
}

MarginalCheckReport marginal_convolution_check(const DensityOperator &t, const PhaseSpaceGrid &grid,
                                               const PhaseSpaceOptions &options, Index block) {
    return marginal_convolution_check(build_phase_space_povm(t, grid, options), t, block);
}

MarginalCheckReport marginal_convolution_check(const PhaseSpacePOVM &povm, const DensityOperator &t,
                                               Index block) {
    const Index n = t.dim();
    if (povm.dim() != n) {
        throw Error(ErrorCode::DimensionMismatch, "state and phase-space POVM differ in dimension");
    }
    MarginalCheckReport report;
    report.dim = n;
    report.block = block <= 0 ? n / 2 : std::min(block, n);
    report.grid = povm.grid();

    report.captured_mass = povm.captured_mass();
    const auto mx = marginal_x(povm);
    report.edges = mx.edges();

    const auto eq = compressed_quadrature_measure(n);
    const auto minus = smear(position_distribution(t, Quadrature::Position, true), eq, mx.edges());
    const auto plus = smear(position_distribution(t, Quadrature::Position, false), eq, mx.edges());
    const auto qn = position_operator(n);
    const auto truncated =
        smear(state_distribution(t, qn.negated()), spectral_measure_of(qn), mx.edges());

    for (std::size_t b = 0; b < mx.bin_count(); ++b) {
        const auto &lhs = mx.effects()[b];
        const double d = block_distance(lhs, minus.effects()[b], report.block);
        report.bin_distance.push_back(d);
        report.max_distance = std::max(report.max_distance, d);
        report.max_distance_full =
            std::max(report.max_distance_full, max_entry_distance(lhs, minus.effects()[b]));
        report.max_distance_plus = std::max(report.max_distance_plus,
                                            block_distance(lhs, plus.effects()[b], report.block));
        report.max_distance_truncated = std::max(
            report.max_distance_truncated, block_distance(lhs, truncated.effects()[b], report.block));
        report.marginal_mass.push_back(lhs(0, 0).real());
        report.smeared_mass.push_back(minus.effects()[b](0, 0).real());
        report.max_mass_difference = std::max(
            report.max_mass_difference, std::abs(report.marginal_mass.back() - report.smeared_mass.back()));
    }
    return report;
}

MarginalSweep marginal_convolution_sweep(const std::function<DensityOperator(Index)> &state,
                                         const std::vector<Index> &dims, const PhaseSpaceGrid &grid,
                                         const PhaseSpaceOptions &options, Index block) {
    if (dims.empty()) {
        throw Error(ErrorCode::InvalidArgument, "sweep needs at least one dimension");
    }
    const Index common = block > 0 ? block : *std::min_element(dims.begin(), dims.end()) / 2;
    MarginalSweep sweep;
    sweep.monotone = true;
    for (Index n : dims) {
        sweep.reports.push_back(marginal_convolution_check(state(n), grid, options, common));
        const auto size = sweep.reports.size();
        if (size > 1 && sweep.reports[size - 1].max_distance >
                            sweep.reports[size - 2].max_distance * (1.0 + 1e-6)) {
            sweep.monotone = false;
        }
    }
    return sweep;
}

} // namespace smearlab
