#include "mvsv/model.hpp"

#include <string>

namespace mvsv {

void ModelParams::validate() const {
    if (m < 1) {
        throw ConfigError("dimension m must be at least 1");
    }
    if (!(nu > m)) {
        throw ConfigError("nu must exceed m (got nu = " + std::to_string(nu) + ")");
    }
    if (!(d >= -1.0 && d <= 1.0)) {
        throw ConfigError("d must lie in [-1, 1] (got d = " + std::to_string(d) + ")");
    }
}

SpdMatrix step_latent(RngStream& rng, const SpdMatrix& q_prev_inv, const ModelParams& params) {
    const SpdMatrix a = frac_power(q_prev_inv, 0.5 * params.d);
    const SpdMatrix e = sample_wishart(rng, params.nu, SpdMatrix::identity(q_prev_inv.dim()));
    return SpdMatrix(a.matrix() * e.matrix() * a.matrix() / params.nu);
}

CorrelationMatrix correlation_from_inverse(const SpdMatrix& q_inv) { return to_correlation(q_inv.inverse()); }

Trajectory simulate(RngStream& rng, const ModelParams& params, int steps) {
    params.validate();
    if (steps < 1) {
        throw ConfigError("number of time steps K must be at least 1");
    }
    Trajectory out;
    out.q_inv_seq.reserve(steps);
    out.omega_seq.reserve(steps);
    out.y_seq.reserve(steps);

    SpdMatrix q_inv = SpdMatrix::identity(params.m);
    for (int k = 0; k < steps; ++k) {
        q_inv = step_latent(rng, q_inv, params);
        CorrelationMatrix omega = correlation_from_inverse(q_inv);
        out.y_seq.push_back(sample_mvn_zero(rng, SpdMatrix(omega.matrix())));
        out.q_inv_seq.push_back(q_inv);
        out.omega_seq.push_back(std::move(omega));
    }
    return out;
}

}  // namespace mvsv
