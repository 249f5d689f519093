#include "mvsv/sampler.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mvsv {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Unscaled transition scales S_k = (Q_{k-1}^-1)^d for k = 1..K, Q_0 = I.
std::vector<SpdMatrix> transition_scales(const std::vector<SpdMatrix>& q_inv_seq, double d) {
    std::vector<SpdMatrix> scales;
    scales.reserve(q_inv_seq.size());
    if (q_inv_seq.empty()) {
        return scales;
    }
    scales.push_back(SpdMatrix::identity(q_inv_seq.front().dim()));
    for (std::size_t k = 1; k < q_inv_seq.size(); ++k) {
        scales.push_back(frac_power(q_inv_seq[k - 1], d));
    }
    return scales;
}

double sum_transitions(const std::vector<SpdMatrix>& q_inv_seq, const std::vector<SpdMatrix>& scales, double nu) {
    double total = 0.0;
    for (std::size_t k = 0; k < q_inv_seq.size(); ++k) {
        total += logpdf_wishart(q_inv_seq[k], nu, scales[k].scaled(1.0 / nu));
    }
    return total;
}

double nu_target(double nu, const std::vector<SpdMatrix>& q_inv_seq, const std::vector<SpdMatrix>& scales,
                 double alpha_nu, double beta_nu, int m) {
    const double prior = logpdf_prior_nu(nu, alpha_nu, beta_nu, m);
    if (prior == kNegInf) {
        return kNegInf;
    }
    return prior + sum_transitions(q_inv_seq, scales, nu);
}

double interior_target(const SpdMatrix& q_k_inv, const SpdMatrix& q_km1_inv, const SpdMatrix& q_kp1_inv,
                       const Vector& y_k, double nu, double d, bool with_likelihood) {
    const double obs = with_likelihood ? log_likelihood_obs(q_k_inv, y_k) : 0.0;
    return obs + log_transition(q_kp1_inv, q_k_inv, nu, d) + log_transition(q_k_inv, q_km1_inv, nu, d);
}

double terminal_target(const SpdMatrix& q_K_inv, const SpdMatrix& q_Km1_inv, const Vector& y_K, double nu, double d,
                       bool with_likelihood) {
    const double obs = with_likelihood ? log_likelihood_obs(q_K_inv, y_K) : 0.0;
    return obs + log_transition(q_K_inv, q_Km1_inv, nu, d);
}

// Numerical failures inside a density count as zero density.
template <typename F>
double guarded(F&& f) {
    try {
        const double v = f();
        return std::isnan(v) ? kNegInf : v;
    } catch (const Error&) {
        return kNegInf;
    }
}

}  // namespace

SamplerConfig SamplerConfig::defaults(int m) {
    SamplerConfig c;
    c.m = m;
    c.alpha_nu = m + 2.0;
    c.beta_nu = 1.0;
    c.nu_init = m + (c.alpha_nu - 1.0) / c.beta_nu;
    return c;
}

void SamplerConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError("invalid sampler configuration: " + msg); };
    if (m < 1) fail("m must be at least 1");
    if (n_iters < 1) fail("n_iters must be positive");
    if (burn_in_states < 0 || burn_in_params < 0) fail("burn-in must be non-negative");
    if (n_iters <= std::max(burn_in_states, burn_in_params)) fail("n_iters must exceed both burn-in lengths");
    if (thin_states < 1 || thin_params < 1) fail("thinning intervals must be at least 1");
    if (!(a_f > 1.0)) fail("a_f must exceed 1");
    if (!(nu_var > 0.0)) fail("nu_var must be positive");
    if (!(alpha_nu > 0.0) || !(beta_nu > 0.0)) fail("alpha_nu and beta_nu must be positive");
    if (!(nu_init > m)) fail("nu_init must exceed m");
    if (!(d_init >= -1.0 && d_init <= 1.0)) fail("d_init must lie in [-1, 1]");
}

double log_likelihood_obs(const SpdMatrix& q_inv, const Vector& y) {
    const CorrelationMatrix omega = to_correlation(q_inv.inverse());
    return logpdf_mvn_zero(y, SpdMatrix(omega.matrix()));
}

double log_transition(const SpdMatrix& q_inv, const SpdMatrix& q_prev_inv, double nu, double d) {
    return logpdf_wishart(q_inv, nu, frac_power(q_prev_inv, d).scaled(1.0 / nu));
}

double log_g_Qk(const SpdMatrix& q_k_inv, const SpdMatrix& q_km1_inv, const SpdMatrix& q_kp1_inv, const Vector& y_k,
                double nu, double d) {
    return guarded([&] { return interior_target(q_k_inv, q_km1_inv, q_kp1_inv, y_k, nu, d, true); });
}

SpdMatrix interior_proposal_scale(const SpdMatrix& q_km1_inv, const SpdMatrix& q_kp1_inv, const Vector& y_k, double nu,
                                  double d) {
    const Matrix qt = 0.5 * (diag_sqrt(q_km1_inv.inverse().matrix()) + diag_sqrt(q_kp1_inv.inverse().matrix()));
    const Vector qy = qt * y_k;
    const Matrix precision = nu * frac_power(q_km1_inv, -d).matrix() + qy * qy.transpose();
    return SpdMatrix(precision).inverse();
}

QProposal propose_Qk(RngStream& rng, const SpdMatrix& q_km1_inv, const SpdMatrix& q_kp1_inv, const Vector& y_k,
                     double nu, double d) {
    SpdMatrix scale = interior_proposal_scale(q_km1_inv, q_kp1_inv, y_k, nu, d);
    SpdMatrix draw = sample_wishart(rng, nu + 1.0, scale);
    const double log_q = logpdf_wishart(draw, nu + 1.0, scale);
    return {std::move(draw), log_q, nu + 1.0, std::move(scale)};
}

double log_g_QK(const SpdMatrix& q_K_inv, const SpdMatrix& q_Km1_inv, const Vector& y_K, double nu, double d) {
    return guarded([&] { return terminal_target(q_K_inv, q_Km1_inv, y_K, nu, d, true); });
}

QProposal propose_QK(RngStream& rng, const SpdMatrix& q_Km1_inv, double nu, double d) {
    SpdMatrix scale = frac_power(q_Km1_inv, d).scaled(1.0 / nu);
    SpdMatrix draw = sample_wishart(rng, nu + 1.0, scale);
    const double log_q = logpdf_wishart(draw, nu + 1.0, scale);
    return {std::move(draw), log_q, nu + 1.0, std::move(scale)};
}

double log_g_nu(double nu, const std::vector<SpdMatrix>& q_inv_seq, double d, double alpha_nu, double beta_nu,
                int m) {
    return guarded([&] { return nu_target(nu, q_inv_seq, transition_scales(q_inv_seq, d), alpha_nu, beta_nu, m); });
}

double log_g_d(double d, const std::vector<SpdMatrix>& q_inv_seq, double nu) {
    if (!(d >= -1.0 && d <= 1.0)) {
        return kNegInf;
    }
    return guarded([&] {
        double total = 0.0;
        for (std::size_t k = 0; k < q_inv_seq.size(); ++k) {
            if (k == 0) {
                // Q_0 = I: log-determinant vanishes, power is the identity
                total += -0.5 * nu * q_inv_seq[0].trace();
                continue;
            }
            const SpdMatrix& prev = q_inv_seq[k - 1];
            // Q_{k-1}^d is (Q_{k-1}^-1)^(-d)
            const Matrix p = frac_power(prev, -d).matrix();
            total += -0.5 * d * nu * prev.log_det() - 0.5 * nu * (p * q_inv_seq[k].matrix()).trace();
        }
        return total;
    });
}

bool mh_accept_with_uniform(double u, double log_g_star, double log_g_old, double log_q_fwd, double log_q_bwd) {
    if (log_g_star == kNegInf || std::isnan(log_g_star)) {
        return false;
    }
    const double log_ratio = (log_g_star - log_g_old) + (log_q_bwd - log_q_fwd);
    if (std::isnan(log_ratio)) {
        return false;
    }
    if (log_ratio >= 0.0) {
        return true;
    }
    return std::log(u) < log_ratio;
}

bool mh_accept(RngStream& rng, double log_g_star, double log_g_old, double log_q_fwd, double log_q_bwd) {
    return mh_accept_with_uniform(rng.uniform(), log_g_star, log_g_old, log_q_fwd, log_q_bwd);
}

ChainState gibbs_sweep(RngStream& rng, const ChainState& state, const std::vector<Vector>& y_seq,
                       const SamplerConfig& config, AcceptanceCounters& counters, const SamplerHooks& hooks) {
    const std::size_t steps = state.size();
    if (y_seq.size() != steps) {
        throw InvalidData("observation count " + std::to_string(y_seq.size()) + " does not match chain length " +
                          std::to_string(steps));
    }
    if (counters.accept_q.size() != steps) {
        counters = AcceptanceCounters(steps);
    }
    const int m = config.m;
    const bool with_lik = !hooks.likelihood_off;
    const SpdMatrix eye = SpdMatrix::identity(m);
    const Vector zero = Vector::Zero(m);

    ChainState next = state;
    next.sweep_index = state.sweep_index + 1;

    auto decide = [&](MhEvent& ev) {
        ev.state = &next;
        ev.uniform = rng.uniform();
        ev.accepted = mh_accept_with_uniform(ev.uniform, ev.log_g_star, ev.log_g_old, ev.log_q_fwd, ev.log_q_bwd);
        if (hooks.on_decision) {
            hooks.on_decision(ev);
        }
        return ev.accepted;
    };

    // Latent states, ascending k; the left neighbour is already updated.
    for (std::size_t k = 0; k < steps; ++k) {
        const bool terminal = (k + 1 == steps);
        const SpdMatrix& left = (k == 0) ? eye : next.q_inv_seq[k - 1];
        const SpdMatrix& old = next.q_inv_seq[k];
        const Vector& y = with_lik ? y_seq[k] : zero;
        const double nu = next.nu;
        const double d = next.d;

        MhEvent ev;
        ev.block = terminal ? Block::TerminalQ : Block::InteriorQ;
        ev.k = static_cast<int>(k);
        counters.propose_q[k] += 1;

        std::optional<QProposal> proposal;
        try {
            if (hooks.identity_proposals) {
                proposal = QProposal{old, 0.0, nu + 1.0, eye};
            } else if (terminal) {
                proposal = propose_QK(rng, left, nu, d);
            } else {
                proposal = propose_Qk(rng, left, next.q_inv_seq[k + 1], y, nu, d);
            }
        } catch (const Error&) {
            proposal.reset();
        }

        auto target = [&](const SpdMatrix& x) {
            return guarded([&] {
                return terminal ? terminal_target(x, left, y, nu, d, with_lik)
                                : interior_target(x, left, next.q_inv_seq[k + 1], y, nu, d, with_lik);
            }) + hooks.log_g_offset;
        };

        if (!proposal) {
            ev.log_g_star = kNegInf;
            ev.log_g_old = target(old);
            decide(ev);
            continue;
        }
        ev.q_star = proposal->value;
        ev.log_g_star = target(proposal->value);
        ev.log_g_old = target(old);
        if (hooks.identity_proposals) {
            ev.log_q_fwd = 0.0;
            ev.log_q_bwd = 0.0;
        } else {
            ev.log_q_fwd = proposal->log_q_forward;
            ev.log_q_bwd = guarded([&] { return proposal->log_density(old); });
        }
        if (decide(ev)) {
            counters.accept_q[k] += 1;
            next.q_inv_seq[k] = proposal->value;
        }
    }

    // nu, given the updated chain and the previous d.
    if (!hooks.fix_nu) {
        const double old = next.nu;
        // the scales depend on d only, so they are shared by both evaluations
        std::optional<std::vector<SpdMatrix>> scales;
        try {
            scales = transition_scales(next.q_inv_seq, next.d);
        } catch (const Error&) {
            scales.reset();
        }
        auto target = [&](double nu) {
            if (!scales) {
                return kNegInf;
            }
            return guarded([&] { return nu_target(nu, next.q_inv_seq, *scales, config.alpha_nu, config.beta_nu, m); }) +
                   hooks.log_g_offset;
        };
        MhEvent ev;
        ev.block = Block::Nu;
        counters.propose_nu += 1;
        const ShiftedGammaParams fwd = shifted_gamma_params(old, config.nu_var, m);
        const double star = hooks.identity_proposals ? old : sample_shifted_gamma(rng, fwd);
        ev.scalar_star = star;
        ev.log_g_star = target(star);
        ev.log_g_old = target(old);
        if (!hooks.identity_proposals) {
            ev.log_q_fwd = logpdf_shifted_gamma(star, fwd);
            ev.log_q_bwd = logpdf_shifted_gamma(old, shifted_gamma_params(star, config.nu_var, m));
        }
        if (decide(ev)) {
            counters.accept_nu += 1;
            next.nu = star;
        }
    }

    // d, given the updated chain and updated nu.
    if (!hooks.fix_d) {
        const double old = next.d;
        auto target = [&](double d) { return log_g_d(d, next.q_inv_seq, next.nu) + hooks.log_g_offset; };
        MhEvent ev;
        ev.block = Block::D;
        counters.propose_d += 1;
        const ScaledBetaParams fwd = beta_prop_param(old, config.a_f);
        const double star = hooks.identity_proposals ? old : sample_scaled_beta(rng, fwd);
        ev.scalar_star = star;
        ev.log_g_star = target(star);
        ev.log_g_old = target(old);
        if (!hooks.identity_proposals) {
            ev.log_q_fwd = logpdf_scaled_beta(star, fwd);
            ev.log_q_bwd = logpdf_scaled_beta(old, beta_prop_param(star, config.a_f));
        }
        if (decide(ev)) {
            counters.accept_d += 1;
            next.d = star;
        }
    }
    return next;
}

ChainState initial_state(std::size_t steps, const SamplerConfig& config) {
    ChainState s;
    s.q_inv_seq.assign(steps, SpdMatrix::identity(config.m));
    s.nu = config.nu_init;
    s.d = config.d_init;
    s.sweep_index = 0;
    return s;
}

void validate_observations(const std::vector<Vector>& y_seq, int m) {
    if (y_seq.empty()) {
        throw InvalidData("no observations");
    }
    for (std::size_t k = 0; k < y_seq.size(); ++k) {
        if (y_seq[k].size() != m) {
            throw InvalidData("observation " + std::to_string(k) + " has " + std::to_string(y_seq[k].size()) +
                              " channels, expected " + std::to_string(m));
        }
        if (!y_seq[k].allFinite()) {
            throw InvalidData("observation " + std::to_string(k) + " has non-finite entries");
        }
    }
}

ChainRecord run_chain(const std::vector<Vector>& y_seq, const SamplerConfig& config, const SamplerHooks& hooks) {
    config.validate();
    validate_observations(y_seq, config.m);

    ChainRecord record;
    record.config = config;
    record.steps = static_cast<int>(y_seq.size());
    record.counters = AcceptanceCounters(y_seq.size());
    record.nu_trace.reserve(config.n_iters);
    record.d_trace.reserve(config.n_iters);

    RngStream rng(config.seed);
    ChainState state = initial_state(y_seq.size(), config);
    for (int j = 0; j < config.n_iters; ++j) {
        state = gibbs_sweep(rng, state, y_seq, config, record.counters, hooks);
        record.nu_trace.push_back(state.nu);
        record.d_trace.push_back(state.d);
        const bool keep = config.record_all_states ||
                          (j >= config.burn_in_states && (j - config.burn_in_states) % config.thin_states == 0);
        if (keep) {
            record.state_sweeps.push_back(j);
            record.state_samples.push_back(state.q_inv_seq);
        }
    }
    return record;
}

}  // namespace mvsv
