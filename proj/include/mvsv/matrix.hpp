#pragma once

#include <Eigen/Dense>

#include "mvsv/errors.hpp"

namespace mvsv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Symmetric positive-definite matrix.
///
/// The input is symmetrized on construction (average of M and M^T) and its
/// lower Cholesky factor is computed once and kept alongside the entries, so
/// determinants, solves and inverses never refactor. Construction throws
/// NotPositiveDefinite when the factorization hits a non-positive pivot.
class SpdMatrix {
public:
    explicit SpdMatrix(const Matrix& m);

    static SpdMatrix identity(Index dim);
    static SpdMatrix diagonal(const Vector& diag);

    Index dim() const noexcept { return entries_.rows(); }
    const Matrix& matrix() const noexcept { return entries_; }
    double operator()(Index i, Index j) const { return entries_(i, j); }

    /// Lower-triangular L with L L^T equal to the stored matrix.
    const Matrix& cholesky_factor() const noexcept { return chol_; }

    double log_det() const noexcept;
    double trace() const noexcept { return entries_.trace(); }
    Matrix solve(const Matrix& rhs) const;
    SpdMatrix inverse() const;
    SpdMatrix scaled(double factor) const;

private:
    Matrix entries_;
    Matrix chol_;
};

/// Unit-diagonal symmetric matrix obtained by rescaling an SPD matrix.
class CorrelationMatrix {
public:
    explicit CorrelationMatrix(const Matrix& entries);

    static CorrelationMatrix identity(Index dim);

    Index dim() const noexcept { return entries_.rows(); }
    const Matrix& matrix() const noexcept { return entries_; }
    double operator()(Index i, Index j) const { return entries_(i, j); }

private:
    Matrix entries_;
};

/// Lower Cholesky factor of a symmetric matrix.
Matrix cholesky(const Matrix& m);

double log_det(const SpdMatrix& m);

/// M^p through the symmetric eigendecomposition M = V diag(l) V^T.
/// Eigenvalues at or below 1e-12 times the largest one are rejected with
/// NotPositiveDefinite rather than clamped.
SpdMatrix frac_power(const SpdMatrix& m, double p);

/// Omega_ij = Q_ij / sqrt(Q_ii Q_jj).
CorrelationMatrix to_correlation(const SpdMatrix& q);

/// Diagonal matrix holding sqrt(Q_ii); off-diagonal input entries are ignored.
Matrix diag_sqrt(const Matrix& q);

/// Log of the multivariate gamma function Gamma_m(x).
double mv_log_gamma(int m, double x);

/// ln N(y; 0, sigma).
double logpdf_mvn_zero(const Vector& y, const SpdMatrix& sigma);

}  // namespace mvsv
