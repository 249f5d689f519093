#include <doctest.h>

#include <cmath>
#include <random>

#include "mvsv/matrix.hpp"
#include "oracles.hpp"

using namespace mvsv;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

double rel_err(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace

TEST_CASE("cholesky on worked examples") {
    CHECK(cholesky(Matrix::Identity(2, 2)).isApprox(Matrix::Identity(2, 2)));
    CHECK(cholesky(mat2(4, 0, 0, 9)).isApprox(mat2(2, 0, 0, 3)));
    const Matrix l = cholesky(mat2(4, 2, 2, 5));
    CHECK(l.isApprox(mat2(2, 0, 1, 2)));
    CHECK((l * l.transpose() - mat2(4, 2, 2, 5)).cwiseAbs().maxCoeff() <= 1e-10 * 5);
}

TEST_CASE("cholesky rejects indefinite input") {
    CHECK_THROWS_AS(cholesky(mat2(1, 2, 2, 1)), NotPositiveDefinite);
    CHECK_THROWS_AS(SpdMatrix(mat2(0, 0, 0, 1)), NotPositiveDefinite);
    CHECK_THROWS_AS(SpdMatrix(mat2(1, 0.5, 0.1, 1)), DomainError);
}

TEST_CASE("SpdMatrix symmetrizes tiny asymmetry") {
    const SpdMatrix s(mat2(2, 1 + 1e-14, 1, 2));
    CHECK(s(0, 1) == s(1, 0));
}

TEST_CASE("log_det") {
    CHECK(log_det(SpdMatrix::identity(3)) == doctest::Approx(0.0));
    CHECK(log_det(SpdMatrix(mat2(4, 0, 0, 9))) == doctest::Approx(std::log(36.0)).epsilon(1e-14));
    // 4*5 - 2*2
    CHECK(log_det(SpdMatrix(mat2(4, 2, 2, 5))) == doctest::Approx(std::log(16.0)).epsilon(1e-14));
}

TEST_CASE("frac_power examples") {
    CHECK(frac_power(SpdMatrix::identity(2), -0.4).matrix().isApprox(Matrix::Identity(2, 2)));
    CHECK(frac_power(SpdMatrix(mat2(4, 0, 0, 9)), 0.5).matrix().isApprox(mat2(2, 0, 0, 3)));
    const Matrix a = mat2(4, 2, 2, 5);
    CHECK(rel_err(frac_power(SpdMatrix(a), 2.0).matrix(), a * a) < 1e-12);
    CHECK(rel_err(a * a, mat2(20, 18, 18, 29)) == 0.0);
    CHECK(rel_err(frac_power(SpdMatrix(a), 1.0).matrix(), a) < 1e-10);
    CHECK(rel_err(frac_power(SpdMatrix(a), 0.0).matrix(), Matrix::Identity(2, 2)) < 1e-10);
}

TEST_CASE("frac_power rejects eigenvalues under the floor") {
    // eigenvalues 1 and 1e-14
    const Matrix v = mat2(1, 1, 1, -1) / std::sqrt(2.0);
    const Matrix m = v * mat2(1, 0, 0, 1e-14) * v.transpose();
    Matrix sym = 0.5 * (m + m.transpose());
    // the Cholesky factorization may or may not succeed; either way frac_power must refuse
    CHECK_THROWS_AS(frac_power(SpdMatrix(sym), 0.5), NotPositiveDefinite);
}

TEST_CASE("frac_power agrees with MatrixPower for larger m") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix m = oracle::random_spd(rng, 4);
        for (double p : {0.5, -0.8, 1.7}) {
            CHECK(rel_err(frac_power(SpdMatrix(m), p).matrix(), oracle::mpow(m, p)) < 1e-9);
        }
    }
}

TEST_CASE("to_correlation and diag_sqrt") {
    CHECK(to_correlation(SpdMatrix::identity(2)).matrix().isApprox(Matrix::Identity(2, 2)));
    const auto omega = to_correlation(SpdMatrix(mat2(4, 2, 2, 9)));
    CHECK(omega(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(omega(0, 0) == 1.0);
    CHECK(to_correlation(SpdMatrix(mat2(7, 0, 0, 3))).matrix() == Matrix::Identity(2, 2));

    CHECK(diag_sqrt(Matrix::Identity(2, 2)) == Matrix::Identity(2, 2));
    CHECK(diag_sqrt(mat2(4, 0, 0, 9)) == mat2(2, 0, 0, 3));
    CHECK(diag_sqrt(mat2(4, 2, 2, 9)) == mat2(2, 0, 0, 3));
    CHECK_THROWS_AS(diag_sqrt(mat2(0, 0, 0, 1)), DomainError);
}

TEST_CASE("mv_log_gamma") {
    CHECK(mv_log_gamma(1, 2.0) == doctest::Approx(0.0));
    // (m(m-1)/4) ln(pi) = 0.5 ln(pi) for m = 2
    const double expected = 0.5 * std::log(M_PI) + oracle::log_gamma(2.5) + oracle::log_gamma(2.0);
    CHECK(expected == doctest::Approx(0.857048).epsilon(1e-6));
    CHECK(oracle::mv_log_gamma(2, 2.5) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(mv_log_gamma(2, 2.5) == doctest::Approx(expected).epsilon(1e-13));
    CHECK_THROWS_AS(mv_log_gamma(2, 0.5), DomainError);
    CHECK_THROWS_AS(mv_log_gamma(2, 0.2), DomainError);
    for (double x : {0.3, 1.0, 3.7, 12.5, 40.0}) {
        CHECK(mv_log_gamma(1, x) == std::lgamma(x));
        CHECK(mv_log_gamma(3, x + 1.0) == doctest::Approx(oracle::mv_log_gamma(3, x + 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("matrix kernel properties over random SPD inputs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(0.2, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 2 + trial % 3;
        const Matrix raw = oracle::random_spd(rng, m);
        const SpdMatrix s(raw);

        const Matrix l = cholesky(raw);
        CHECK(rel_err(l * l.transpose(), raw) < 1e-8);

        for (double p : {0.5, 2.0, -1.0, -0.8}) {
            CHECK(rel_err(frac_power(frac_power(s, p), 1.0 / p).matrix(), raw) < 1e-8);
        }
        CHECK(rel_err(frac_power(s, -1.0).matrix(), s.inverse().matrix()) < 1e-8);

        Vector dvec(m);
        for (int i = 0; i < m; ++i) dvec(i) = pos(rng);
        const SpdMatrix congruent(Matrix(dvec.asDiagonal() * raw * dvec.asDiagonal()));
        CHECK((to_correlation(congruent).matrix() - to_correlation(s).matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("logpdf_mvn_zero matches the LU oracle") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix sigma = oracle::random_spd(rng, 3);
        Vector y(3);
        for (int i = 0; i < 3; ++i) y(i) = z(rng);
        CHECK(logpdf_mvn_zero(y, SpdMatrix(sigma)) == doctest::Approx(oracle::mvn_logpdf(y, sigma)).epsilon(1e-10));
    }
}
