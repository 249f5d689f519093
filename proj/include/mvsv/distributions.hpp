#pragma once

#include "mvsv/matrix.hpp"
#include "mvsv/rng.hpp"

namespace mvsv {

// Sampling algorithms:
//   normal        std::normal_distribution over mt19937_64
//   gamma         Marsaglia-Tsang squeeze; shapes below 1 use the
//                 Gamma(a + 1) * U^(1/a) boost
//   chi-square(k) Gamma(k/2, rate 1/2)
//   beta(a, b)    X / (X + Y), X ~ Gamma(a), Y ~ Gamma(b)
//   Wishart       Bartlett decomposition
// Every log density returns -infinity outside its support.

Vector sample_std_normal_vec(RngStream& rng, Index m);
Vector sample_mvn_zero(RngStream& rng, const SpdMatrix& sigma);

double sample_gamma(RngStream& rng, double shape, double rate);
double sample_chi_square(RngStream& rng, double dof);
double sample_beta(RngStream& rng, double a, double b);

/// X = L A A^T L^T with L = chol(S), A lower-triangular, A_ii^2 ~ chi2(nu - i)
/// (0-based i) and standard-normal subdiagonal. Requires nu > m - 1.
SpdMatrix sample_wishart(RngStream& rng, double nu, const SpdMatrix& scale);
double logpdf_wishart(const SpdMatrix& x, double nu, const SpdMatrix& scale);

/// Gamma(alpha, rate beta) shifted right by `shift`.
struct ShiftedGammaParams {
    double alpha = 1.0;
    double beta = 1.0;
    double shift = 0.0;
};

/// Shape/rate such that the shifted Gamma has mode `mode` and variance
/// `variance`: beta = ((M - m) + sqrt((M - m)^2 + 4 var)) / (2 var),
/// alpha = 1 + (M - m) beta.
ShiftedGammaParams shifted_gamma_params(double mode, double variance, int m);
double sample_shifted_gamma(RngStream& rng, const ShiftedGammaParams& params);
double logpdf_shifted_gamma(double nu, const ShiftedGammaParams& params);

/// Beta(a, 1/a) mapped onto [-1, 1] by d = 2x - 1.
struct ScaledBetaParams {
    double a = 1.0;
    double b = 1.0;
};

/// a = clamp(sqrt(mu / (1 - mu)), 1/a_f, a_f) with mu = (1 + d_mean) / 2, so
/// that the unclamped proposal has mean d_mean.
ScaledBetaParams beta_prop_param(double d_mean, double a_f);
double sample_scaled_beta(RngStream& rng, const ScaledBetaParams& params);
double logpdf_scaled_beta(double d, const ScaledBetaParams& params);

/// Gamma(alpha_nu, rate beta_nu) on nu - m, standard normalizer.
double logpdf_prior_nu(double nu, double alpha_nu, double beta_nu, int m);
/// Uniform on [-1, 1].
double logpdf_prior_d(double d);

}  // namespace mvsv
