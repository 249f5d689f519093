#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mvsv/distributions.hpp"
#include "mvsv/matrix.hpp"
#include "mvsv/rng.hpp"

namespace mvsv {

/// Hyperparameters, proposal constants and the MCMC schedule.
///
/// `defaults(m)` gives alpha_nu = m + 2, beta_nu = 1,
/// nu_init = m + (alpha_nu - 1) / beta_nu, d_init = 0.5, nu_var = 0.1,
/// a_f = 5, 10000 sweeps, burn-in 1000 (states) / 4000 (parameters) and
/// thinning 100 / 200.
struct SamplerConfig {
    int m = 2;
    int n_iters = 10000;
    double alpha_nu = 4.0;
    double beta_nu = 1.0;
    double nu_var = 0.1;
    double a_f = 5.0;
    double nu_init = 5.0;
    double d_init = 0.5;
    int burn_in_states = 1000;
    int burn_in_params = 4000;
    int thin_states = 100;
    int thin_params = 200;
    // Keep every sweep's latent states instead of the thinned subset.
    bool record_all_states = false;
    std::uint64_t seed = 1;

    static SamplerConfig defaults(int m);
    void validate() const;
};

struct ChainState {
    std::vector<SpdMatrix> q_inv_seq;
    double nu = 0.0;
    double d = 0.0;
    int sweep_index = 0;

    std::size_t size() const noexcept { return q_inv_seq.size(); }
};

struct AcceptanceCounters {
    std::vector<std::uint64_t> accept_q;
    std::vector<std::uint64_t> propose_q;
    std::uint64_t accept_nu = 0;
    std::uint64_t propose_nu = 0;
    std::uint64_t accept_d = 0;
    std::uint64_t propose_d = 0;

    explicit AcceptanceCounters(std::size_t steps = 0) : accept_q(steps, 0), propose_q(steps, 0) {}
};

/// Output of run_chain. Parameter traces hold one entry per sweep; latent
/// states are kept for the sweeps listed in `state_sweeps` (0-based).
struct ChainRecord {
    SamplerConfig config;
    int steps = 0;
    std::vector<double> nu_trace;
    std::vector<double> d_trace;
    std::vector<int> state_sweeps;
    std::vector<std::vector<SpdMatrix>> state_samples;
    AcceptanceCounters counters;
};

enum class Block { InteriorQ, TerminalQ, Nu, D };

/// One Metropolis-Hastings decision, reported to SamplerHooks::on_decision.
/// `state` is the chain as it stood when the decision was made (the updated
/// block still holds its old value) and is only valid during the callback.
struct MhEvent {
    Block block = Block::Nu;
    int k = -1;
    const ChainState* state = nullptr;
    std::optional<SpdMatrix> q_star;
    double scalar_star = 0.0;
    double log_g_star = 0.0;
    double log_g_old = 0.0;
    double log_q_fwd = 0.0;
    double log_q_bwd = 0.0;
    double uniform = 0.0;
    bool accepted = false;
};

/// Test instrumentation. A default-constructed value leaves the sampler
/// untouched.
struct SamplerHooks {
    // Drop the observation term: g loses its likelihood factor and the
    // interior proposal sees y_k = 0.
    bool likelihood_off = false;
    // Propose the current value of every block.
    bool identity_proposals = false;
    bool fix_nu = false;
    bool fix_d = false;
    // Added to every log g evaluation.
    double log_g_offset = 0.0;
    std::function<void(const MhEvent&)> on_decision;
};

/// Wishart independence proposal together with its parameters, so the
/// reverse density can be evaluated at the old point.
struct QProposal {
    SpdMatrix value;
    double log_q_forward;
    double dof;
    SpdMatrix scale;

    double log_density(const SpdMatrix& x) const { return logpdf_wishart(x, dof, scale); }
};

/// ln N(y; 0, Omega) with Omega the correlation matrix implied by Q^-1.
double log_likelihood_obs(const SpdMatrix& q_inv, const Vector& y);

/// Transition density of Q_k^-1 given Q_{k-1}^-1: W(nu, (Q_{k-1}^-1)^d / nu).
double log_transition(const SpdMatrix& q_inv, const SpdMatrix& q_prev_inv, double nu, double d);

/// Target for an interior state: likelihood of y_k plus the transition into
/// Q_k^-1 and out of it into Q_{k+1}^-1.
double log_g_Qk(const SpdMatrix& q_k_inv, const SpdMatrix& q_km1_inv, const SpdMatrix& q_kp1_inv, const Vector& y_k,
                double nu, double d);

/// Scale (nu S_k^-1 + Qt y y^T Qt)^-1 of the interior proposal, with
/// S_k = (Q_{k-1}^-1)^d and Qt the average of diag_sqrt(Q_{k-1}) and
/// diag_sqrt(Q_{k+1}).
SpdMatrix interior_proposal_scale(const SpdMatrix& q_km1_inv, const SpdMatrix& q_kp1_inv, const Vector& y_k, double nu,
                                  double d);

/// Draw from W(nu + 1, interior_proposal_scale(...)).
QProposal propose_Qk(RngStream& rng, const SpdMatrix& q_km1_inv, const SpdMatrix& q_kp1_inv, const Vector& y_k,
                     double nu, double d);

/// Target for the last state: likelihood of y_K plus the transition into Q_K^-1.
double log_g_QK(const SpdMatrix& q_K_inv, const SpdMatrix& q_Km1_inv, const Vector& y_K, double nu, double d);

/// Draw from W(nu + 1, S_K / nu).
QProposal propose_QK(RngStream& rng, const SpdMatrix& q_Km1_inv, double nu, double d);

/// Prior on nu plus the sum of transition densities over the chain, Q_0 = I.
/// -inf for nu <= m.
double log_g_nu(double nu, const std::vector<SpdMatrix>& q_inv_seq, double d, double alpha_nu, double beta_nu, int m);

/// sum_k -(d nu / 2) ln|Q_{k-1}^-1| - (nu / 2) Tr(Q_{k-1}^d Q_k^-1) with
/// Q_0 = I; -inf outside [-1, 1]. Differs from the summed transition
/// densities only by a d-independent constant.
double log_g_d(double d, const std::vector<SpdMatrix>& q_inv_seq, double nu);

/// Accept iff ln(u) < log_g_star - log_g_old + log_q_bwd - log_q_fwd.
bool mh_accept_with_uniform(double u, double log_g_star, double log_g_old, double log_q_fwd, double log_q_bwd);
bool mh_accept(RngStream& rng, double log_g_star, double log_g_old, double log_q_fwd, double log_q_bwd);

/// One sweep: Q_1 .. Q_{K-1} in ascending order, then Q_K, then nu, then d.
ChainState gibbs_sweep(RngStream& rng, const ChainState& state, const std::vector<Vector>& y_seq,
                       const SamplerConfig& config, AcceptanceCounters& counters, const SamplerHooks& hooks = {});

ChainState initial_state(std::size_t steps, const SamplerConfig& config);

/// Throws InvalidData on ragged or non-finite observations.
void validate_observations(const std::vector<Vector>& y_seq, int m);

ChainRecord run_chain(const std::vector<Vector>& y_seq, const SamplerConfig& config, const SamplerHooks& hooks = {});

}  // namespace mvsv
