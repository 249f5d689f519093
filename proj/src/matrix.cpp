#include "mvsv/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mvsv {

namespace {

constexpr double kEigenFloor = 1e-12;
constexpr double kSymmetryTolerance = 1e-8;

Matrix symmetrized(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DomainError("expected a non-empty square matrix, got " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
        throw NotPositiveDefinite("matrix has non-finite entries");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
        throw DomainError("matrix is not symmetric");
    }
    return 0.5 * (m + m.transpose());
}

}  // namespace

Matrix cholesky(const Matrix& m) {
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite("Cholesky factorization encountered a non-positive pivot");
    }
    return llt.matrixL();
}

SpdMatrix::SpdMatrix(const Matrix& m) : entries_(symmetrized(m)), chol_(cholesky(entries_)) {}

SpdMatrix SpdMatrix::identity(Index dim) { return SpdMatrix(Matrix::Identity(dim, dim)); }

SpdMatrix SpdMatrix::diagonal(const Vector& diag) { return SpdMatrix(Matrix(diag.asDiagonal())); }

double SpdMatrix::log_det() const noexcept { return 2.0 * chol_.diagonal().array().log().sum(); }

Matrix SpdMatrix::solve(const Matrix& rhs) const {
    const auto lower = chol_.triangularView<Eigen::Lower>();
    Matrix x = lower.solve(rhs);
    lower.transpose().solveInPlace(x);
    return x;
}

SpdMatrix SpdMatrix::inverse() const { return SpdMatrix(solve(Matrix::Identity(dim(), dim()))); }

SpdMatrix SpdMatrix::scaled(double factor) const {
    if (!(factor > 0.0)) {
        throw DomainError("SPD scale factor must be positive");
    }
    return SpdMatrix(entries_ * factor);
}

CorrelationMatrix::CorrelationMatrix(const Matrix& entries) : entries_(entries) {
    if (entries_.rows() != entries_.cols()) {
        throw DomainError("correlation matrix must be square");
    }
    entries_ = 0.5 * (entries_ + entries_.transpose());
    for (Index i = 0; i < entries_.rows(); ++i) {
        if (std::abs(entries_(i, i) - 1.0) > 1e-12) {
            throw DomainError("correlation matrix must have a unit diagonal");
        }
        entries_(i, i) = 1.0;
        for (Index j = 0; j < entries_.cols(); ++j) {
            if (!(std::abs(entries_(i, j)) <= 1.0)) {
                throw DomainError("correlation entry outside [-1, 1]");
            }
        }
    }
}

CorrelationMatrix CorrelationMatrix::identity(Index dim) { return CorrelationMatrix(Matrix::Identity(dim, dim)); }

double log_det(const SpdMatrix& m) { return m.log_det(); }

SpdMatrix frac_power(const SpdMatrix& m, double p) {
    Vector values;
    Matrix vectors;
    if (m.dim() == 2) {
        // closed-form 2x2 path
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es;
        es.computeDirect(Eigen::Matrix2d(m.matrix()));
        values = es.eigenvalues();
        vectors = es.eigenvectors();
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> es(m.matrix());
        if (es.info() != Eigen::Success) {
            throw NotPositiveDefinite("eigendecomposition failed");
        }
        values = es.eigenvalues();
        vectors = es.eigenvectors();
    }
    const double largest = values.maxCoeff();
    if (!(largest > 0.0) || values.minCoeff() <= kEigenFloor * largest) {
        throw NotPositiveDefinite("eigenvalue below floor in fractional power");
    }
    const Vector powered = values.array().pow(p).matrix();
    return SpdMatrix(vectors * powered.asDiagonal() * vectors.transpose());
}

Matrix diag_sqrt(const Matrix& q) {
    Matrix out = Matrix::Zero(q.rows(), q.cols());
    for (Index i = 0; i < q.rows(); ++i) {
        if (!(q(i, i) > 0.0)) {
            throw DomainError("diag_sqrt requires a strictly positive diagonal");
        }
        out(i, i) = std::sqrt(q(i, i));
    }
    return out;
}

CorrelationMatrix to_correlation(const SpdMatrix& q) {
    const Index m = q.dim();
    Vector inv_sd(m);
    for (Index i = 0; i < m; ++i) {
        if (!(q(i, i) > 0.0)) {
            throw NotPositiveDefinite("non-positive diagonal entry in to_correlation");
        }
        inv_sd(i) = 1.0 / std::sqrt(q(i, i));
    }
    Matrix omega = inv_sd.asDiagonal() * q.matrix() * inv_sd.asDiagonal();
    for (Index i = 0; i < m; ++i) {
        omega(i, i) = 1.0;
        for (Index j = 0; j < m; ++j) {
            if (i != j) {
                omega(i, j) = std::clamp(omega(i, j), -1.0, 1.0);
            }
        }
    }
    return CorrelationMatrix(omega);
}

double mv_log_gamma(int m, double x) {
    if (m < 1) {
        throw DomainError("mv_log_gamma requires m >= 1");
    }
    if (!(x - 0.5 * (m - 1) > 0.0)) {
        throw DomainError("mv_log_gamma argument must exceed (m - 1) / 2");
    }
    double out = 0.25 * m * (m - 1) * std::log(std::numbers::pi);
    for (int i = 1; i <= m; ++i) {
        out += std::lgamma(x - 0.5 * (i - 1));
    }
    return out;
}

double logpdf_mvn_zero(const Vector& y, const SpdMatrix& sigma) {
    if (y.size() != sigma.dim()) {
        throw DomainError("observation and covariance dimensions differ");
    }
    const Vector z = sigma.cholesky_factor().triangularView<Eigen::Lower>().solve(y);
    const double m = static_cast<double>(y.size());
    return -0.5 * m * std::log(2.0 * std::numbers::pi) - 0.5 * sigma.log_det() - 0.5 * z.squaredNorm();
}

}  // namespace mvsv
