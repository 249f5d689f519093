#pragma once

#include <vector>

#include "mvsv/distributions.hpp"
#include "mvsv/matrix.hpp"
#include "mvsv/rng.hpp"

namespace mvsv {

/// Wishart degrees of freedom `nu` (> m) and persistence exponent `d` in [-1, 1].
struct ModelParams {
    double nu = 5.0;
    double d = 0.8;
    int m = 2;

    void validate() const;
};

/// One realization of the latent chain, its correlations and observations.
struct Trajectory {
    std::vector<SpdMatrix> q_inv_seq;
    std::vector<CorrelationMatrix> omega_seq;
    std::vector<Vector> y_seq;

    std::size_t size() const noexcept { return q_inv_seq.size(); }
};

/// Q_k^-1 = (1/nu) A E A, A = (Q_{k-1}^-1)^(d/2), E ~ W_m(nu, I).
SpdMatrix step_latent(RngStream& rng, const SpdMatrix& q_prev_inv, const ModelParams& params);

/// Correlation matrix implied by a stored inverse state Q_k^-1.
CorrelationMatrix correlation_from_inverse(const SpdMatrix& q_inv);

/// Forward simulation from Q_0 = I with y_k ~ N(0, Omega_k).
Trajectory simulate(RngStream& rng, const ModelParams& params, int steps);

}  // namespace mvsv
