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

#include "smearlab/linalg.hpp"

#include <cmath>
#include <sstream>

namespace smearlab {

namespace {

void check_shape(const Matrix &m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "operator matrix must be square");
    }
    if (m.rows() < 1 || m.rows() > kMaxDimension) {
        std::ostringstream os;
        os << "operator dimension " << m.rows() << " outside [1, " << kMaxDimension << "]";
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
    if (!m.allFinite()) {
        throw Error(ErrorCode::NonFinite, "operator has non-finite entries");
    }
}

} // namespace

Operator::Operator(Matrix m) : m_(std::move(m)) { check_shape(m_); }

Operator Operator::identity(Index dim) { return Operator(Matrix::Identity(dim, dim)); }

HermitianOperator::HermitianOperator(Matrix m, double tolerance) : Operator(std::move(m)) {
    const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tolerance) {
        std::ostringstream os;
        os << "operator is not Hermitian (max |M - M^dagger| = " << asym << ")";
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
    m_ = (0.5 * (m_ + m_.adjoint())).eval();
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double> &entries) {
    Matrix m = Matrix::Zero(static_cast<Index>(entries.size()), static_cast<Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(static_cast<Index>(i), static_cast<Index>(i)) = entries[i];
    }
    return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::symmetrized(const Matrix &m) {
    check_shape(m);
    return HermitianOperator(0.5 * (m + m.adjoint()), 0.0);
}

HermitianOperator HermitianOperator::negated() const { return HermitianOperator(-m_, 0.0); }

DensityOperator::DensityOperator(Matrix m) : HermitianOperator(std::move(m)) {
    const auto tr = m_.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "density operator trace is " << tr.real() << ", expected 1";
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
    if (min_hermitian_eigenvalue(m_) < -kPsdTolerance) {
        throw Error(ErrorCode::InvalidArgument, "density operator is not positive semidefinite");
    }
}

DensityOperator DensityOperator::pure(const Vector &v) {
    const double n2 = v.squaredNorm();
    if (!(n2 > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "pure state vector must be nonzero");
    }
    Matrix m = v * v.adjoint() / n2;
    // Rounding can leave the trace a few ulps away from 1.
    m /= m.trace().real();
    return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::basis_state(Index dim, Index level) {
    if (level < 0 || level >= dim) {
        throw Error(ErrorCode::InvalidArgument, "basis level outside the dimension");
    }
    Vector v = Vector::Zero(dim);
    v(level) = 1.0;
    return pure(v);
}

DensityOperator DensityOperator::maximally_mixed(Index dim) {
    return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Matrix SpectralDecomposition::reconstruct() const {
    Matrix out = Matrix::Zero(dim(), dim());
    for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
        out += eigenvalues[j] * projections[j];
    }
    return out;
}

SpectralDecomposition decompose(const HermitianOperator &a, double degeneracy_tolerance) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
    }
    const auto &values = solver.eigenvalues();
    const Matrix &vectors = solver.eigenvectors();

    SpectralDecomposition out;
    const Index n = values.size();
    Index start = 0;
    while (start < n) {
        Index end = start + 1;
        while (end < n && values(end) - values(end - 1) <= degeneracy_tolerance) {
            ++end;
        }
        const auto block = vectors.middleCols(start, end - start);
        out.eigenvalues.push_back(values.segment(start, end - start).mean());
        out.projections.emplace_back(block * block.adjoint());
        start = end;
    }
    return out;
}

HermitianOperator apply_function(const HermitianOperator &a, const std::function<double(double)> &f,
                                 double degeneracy_tolerance) {
    const auto spectral = decompose(a, degeneracy_tolerance);
    Matrix out = Matrix::Zero(a.dim(), a.dim());
    for (std::size_t j = 0; j < spectral.eigenvalues.size(); ++j) {
        const double v = f(spectral.eigenvalues[j]);
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NonFinite, "operator function is not finite at an eigenvalue");
        }
        out += v * spectral.projections[j];
    }
    return HermitianOperator::symmetrized(out);
}

double hs_norm(const Matrix &b) { return b.norm(); }

double hs_norm(const Operator &b) { return hs_norm(b.matrix()); }

std::complex<double> trace_pairing(const Operator &t, const Operator &a) {
    if (t.dim() != a.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "trace pairing needs operators of equal dimension");
    }
    return t.matrix().cwiseProduct(a.matrix().transpose()).sum();
}

Matrix sqrt_psd(const DensityOperator &t) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(t.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
    }
    const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix matrix_power(const Matrix &a, int k) {
    if (k < 0) {
        throw Error(ErrorCode::InvalidArgument, "matrix power must be nonnegative");
    }
    Matrix out = Matrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < k; ++i) {
        out = (out * a).eval();
    }
    return out;
}

double max_entry_distance(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "matrices differ in shape");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

double min_hermitian_eigenvalue(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()),
                                                 Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
    }
    return solver.eigenvalues()(0);
}

} // namespace smearlab
