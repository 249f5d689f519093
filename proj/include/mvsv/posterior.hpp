#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mvsv/errors.hpp"
#include "mvsv/matrix.hpp"
#include "mvsv/sampler.hpp"

namespace mvsv {

/// Elements at burn_in, burn_in + thin, burn_in + 2 thin, ...
template <typename T>
std::vector<T> thin_and_burn(const std::vector<T>& trace, int burn_in, int thin) {
    if (thin < 1) {
        throw ConfigError("thinning interval must be at least 1");
    }
    if (burn_in < 0) {
        throw ConfigError("burn-in must be non-negative");
    }
    if (static_cast<std::size_t>(burn_in) >= trace.size()) {
        throw EmptyResult("burn-in of " + std::to_string(burn_in) + " leaves nothing of a trace of length " +
                          std::to_string(trace.size()));
    }
    std::vector<T> out;
    for (std::size_t i = static_cast<std::size_t>(burn_in); i < trace.size(); i += static_cast<std::size_t>(thin)) {
        out.push_back(trace[i]);
    }
    return out;
}

/// q-th percentile (q in [0, 100]) by linear interpolation between order
/// statistics at 0-based fractional position q/100 * (n - 1).
double percentile(std::vector<double> values, double q);

/// Percentile trajectory of one off-diagonal correlation Omega_ij over k.
struct PairBand {
    int i = 0;
    int j = 1;
    // values[k][p] is the probs[p] percentile at time k
    std::vector<std::vector<double>> values;
};

struct CorrelationBands {
    std::vector<double> probs;
    std::vector<PairBand> pairs;
};

/// `samples[s][k]` is the k-th latent inverse state of retained sample s.
CorrelationBands correlation_percentiles(const std::vector<std::vector<SpdMatrix>>& samples,
                                         const std::vector<double>& probs);

struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> edges;    // n_bins + 1
    std::vector<double> density;  // count / (N * width)
    std::vector<std::size_t> counts;
    std::size_t clipped = 0;      // samples outside [lo, hi] folded into the edge bins

    double width() const { return (hi - lo) / static_cast<double>(density.size()); }
};

Histogram empirical_hist(const std::vector<double>& samples, int n_bins, double lo, double hi);

/// Histogram over the sample min-max range; a degenerate range is widened by
/// 0.5 on either side.
Histogram empirical_hist_range(const std::vector<double>& samples, int n_bins);

struct AcceptanceRates {
    std::vector<double> q;
    double q_mean = 0.0;
    double nu = 0.0;
    double d = 0.0;
};

/// Per-block acceptance fractions. A block with no proposals reports 0.
AcceptanceRates acceptance_report(const AcceptanceCounters& counters);

struct SummarySchedule {
    int burn_in_states = 1000;
    int thin_states = 100;
    int burn_in_params = 4000;
    int thin_params = 200;
    int nu_bins = 20;
    int d_bins = 20;
    std::vector<double> probs{2.5, 50.0, 97.5};

    static SummarySchedule from_config(const SamplerConfig& config);
};

struct PosteriorSummary {
    CorrelationBands percentiles;
    std::vector<double> nu_samples;
    std::vector<double> d_samples;
    Histogram nu_hist;
    Histogram d_hist;
    AcceptanceRates acceptance;
    std::size_t state_samples = 0;
    std::size_t param_samples = 0;
};

/// Latent samples whose sweep index survives the burn-in / thinning schedule.
std::vector<std::vector<SpdMatrix>> retained_states(const ChainRecord& record, int burn_in, int thin);

PosteriorSummary summarize(const ChainRecord& record, const SummarySchedule& schedule);

}  // namespace mvsv
