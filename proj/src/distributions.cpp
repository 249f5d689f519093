#include "mvsv/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace mvsv {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Marsaglia & Tsang (2000) for shape >= 1, unit rate.
double gamma_unit_rate(RngStream& rng, double shape) {
    if (shape < 1.0) {
        const double g = gamma_unit_rate(rng, shape + 1.0);
        return g * std::pow(rng.uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = rng.std_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

}  // namespace

Vector sample_std_normal_vec(RngStream& rng, Index m) {
    Vector z(m);
    for (Index i = 0; i < m; ++i) {
        z(i) = rng.std_normal();
    }
    return z;
}

Vector sample_mvn_zero(RngStream& rng, const SpdMatrix& sigma) {
    return sigma.cholesky_factor() * sample_std_normal_vec(rng, sigma.dim());
}

double sample_gamma(RngStream& rng, double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
        throw DomainError("gamma shape and rate must be positive");
    }
    return gamma_unit_rate(rng, shape) / rate;
}

double sample_chi_square(RngStream& rng, double dof) { return sample_gamma(rng, 0.5 * dof, 0.5); }

double sample_beta(RngStream& rng, double a, double b) {
    const double x = sample_gamma(rng, a, 1.0);
    const double y = sample_gamma(rng, b, 1.0);
    return x / (x + y);
}

SpdMatrix sample_wishart(RngStream& rng, double nu, const SpdMatrix& scale) {
    const Index m = scale.dim();
    if (!(nu > static_cast<double>(m) - 1.0)) {
        throw DomainError("Wishart degrees of freedom must exceed m - 1");
    }
    Matrix a = Matrix::Zero(m, m);
    for (Index i = 0; i < m; ++i) {
        a(i, i) = std::sqrt(sample_chi_square(rng, nu - static_cast<double>(i)));
        for (Index j = 0; j < i; ++j) {
            a(i, j) = rng.std_normal();
        }
    }
    const Matrix la = scale.cholesky_factor() * a;
    return SpdMatrix(la * la.transpose());
}

double logpdf_wishart(const SpdMatrix& x, double nu, const SpdMatrix& scale) {
    const Index m = scale.dim();
    const double md = static_cast<double>(m);
    if (x.dim() != m) {
        throw DomainError("Wishart argument and scale dimensions differ");
    }
    if (!(nu > md - 1.0)) {
        throw DomainError("Wishart degrees of freedom must exceed m - 1");
    }
    // Tr(S^-1 X) = ||L_S^-1 L_X||_F^2
    const Matrix w = scale.cholesky_factor().triangularView<Eigen::Lower>().solve(x.cholesky_factor());
    return -0.5 * nu * md * std::numbers::ln2 - mv_log_gamma(static_cast<int>(m), 0.5 * nu) -
           0.5 * nu * scale.log_det() + 0.5 * (nu - md - 1.0) * x.log_det() - 0.5 * w.squaredNorm();
}

ShiftedGammaParams shifted_gamma_params(double mode, double variance, int m) {
    const double excess = mode - m;
    if (!(excess > 0.0)) {
        throw DomainError("shifted-Gamma mode must exceed the dimension");
    }
    if (!(variance > 0.0)) {
        throw DomainError("shifted-Gamma variance must be positive");
    }
    const double beta = (excess + std::sqrt(excess * excess + 4.0 * variance)) / (2.0 * variance);
    return {1.0 + excess * beta, beta, static_cast<double>(m)};
}

double sample_shifted_gamma(RngStream& rng, const ShiftedGammaParams& params) {
    double g = 0.0;
    while (!(g > 0.0)) {
        g = sample_gamma(rng, params.alpha, params.beta);
    }
    return params.shift + g;
}

double logpdf_shifted_gamma(double nu, const ShiftedGammaParams& params) {
    const double x = nu - params.shift;
    if (!(x > 0.0)) {
        return kNegInf;
    }
    return params.alpha * std::log(params.beta) - std::lgamma(params.alpha) + (params.alpha - 1.0) * std::log(x) -
           params.beta * x;
}

ScaledBetaParams beta_prop_param(double d_mean, double a_f) {
    if (!(d_mean >= -1.0 && d_mean <= 1.0)) {
        throw DomainError("Beta proposal mean must lie in [-1, 1]");
    }
    if (!(a_f > 1.0)) {
        throw DomainError("Beta proposal clamp a_f must exceed 1");
    }
    const double mu = 0.5 * (1.0 + d_mean);
    // mu = 1 gives +inf, which the clamp maps to a_f
    const double raw = std::sqrt(mu / (1.0 - mu));
    const double a = std::max(std::min(raw, a_f), 1.0 / a_f);
    return {a, 1.0 / a};
}

double sample_scaled_beta(RngStream& rng, const ScaledBetaParams& params) {
    for (;;) {
        // draws that round onto the boundary are outside the open support
        const double d = 2.0 * sample_beta(rng, params.a, params.b) - 1.0;
        if (d > -1.0 && d < 1.0) {
            return d;
        }
    }
}

double logpdf_scaled_beta(double d, const ScaledBetaParams& params) {
    if (!(d > -1.0 && d < 1.0)) {
        return kNegInf;
    }
    const double a = params.a;
    const double b = params.b;
    return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + (a - 1.0) * std::log(0.5 * (1.0 + d)) +
           (b - 1.0) * std::log(0.5 * (1.0 - d)) - std::numbers::ln2;
}

double logpdf_prior_nu(double nu, double alpha_nu, double beta_nu, int m) {
    const double x = nu - m;
    if (!(x > 0.0)) {
        return kNegInf;
    }
    return alpha_nu * std::log(beta_nu) - std::lgamma(alpha_nu) + (alpha_nu - 1.0) * std::log(x) - beta_nu * x;
}

double logpdf_prior_d(double d) { return (d >= -1.0 && d <= 1.0) ? -std::numbers::ln2 : kNegInf; }

}  // namespace mvsv
