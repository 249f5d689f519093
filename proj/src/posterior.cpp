#include "mvsv/posterior.hpp"

#include <algorithm>
#include <cmath>

#include "mvsv/model.hpp"

namespace mvsv {

double percentile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw EmptyResult("percentile of an empty sample");
    }
    if (!(q >= 0.0 && q <= 100.0)) {
        throw DomainError("percentile level must lie in [0, 100]");
    }
    std::sort(values.begin(), values.end());
    const double pos = q / 100.0 * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

CorrelationBands correlation_percentiles(const std::vector<std::vector<SpdMatrix>>& samples,
                                         const std::vector<double>& probs) {
    if (samples.empty()) {
        throw EmptyResult("no retained latent samples");
    }
    for (double p : probs) {
        if (!(p > 0.0 && p < 100.0)) {
            throw DomainError("percentile levels must lie in (0, 100)");
        }
    }
    const std::size_t steps = samples.front().size();
    const int m = steps == 0 ? 0 : static_cast<int>(samples.front().front().dim());

    // corr[k][s] per pair
    CorrelationBands out;
    out.probs = probs;
    std::vector<std::vector<std::vector<double>>> corr;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            out.pairs.push_back({i, j, {}});
            corr.emplace_back(steps, std::vector<double>(samples.size()));
        }
    }
    for (std::size_t s = 0; s < samples.size(); ++s) {
        if (samples[s].size() != steps) {
            throw InvalidData("retained samples have differing chain lengths");
        }
        for (std::size_t k = 0; k < steps; ++k) {
            const CorrelationMatrix omega = correlation_from_inverse(samples[s][k]);
            for (std::size_t p = 0; p < out.pairs.size(); ++p) {
                corr[p][k][s] = omega(out.pairs[p].i, out.pairs[p].j);
            }
        }
    }
    for (std::size_t p = 0; p < out.pairs.size(); ++p) {
        auto& values = out.pairs[p].values;
        values.resize(steps);
        for (std::size_t k = 0; k < steps; ++k) {
            std::sort(corr[p][k].begin(), corr[p][k].end());
            for (double q : probs) {
                values[k].push_back(percentile(corr[p][k], q));
            }
        }
    }
    return out;
}

Histogram empirical_hist(const std::vector<double>& samples, int n_bins, double lo, double hi) {
    if (samples.empty()) {
        throw EmptyResult("histogram of an empty sample");
    }
    if (n_bins < 1) {
        throw ConfigError("histogram needs at least one bin");
    }
    if (!(lo < hi)) {
        throw ConfigError("histogram support must satisfy lo < hi");
    }
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(n_bins, 0);
    const double width = (hi - lo) / n_bins;
    for (int b = 0; b <= n_bins; ++b) {
        h.edges.push_back(b == n_bins ? hi : lo + b * width);
    }
    for (double x : samples) {
        if (x < lo || x > hi) {
            ++h.clipped;
        }
        auto b = static_cast<long>(std::floor((x - lo) / width));
        b = std::clamp(b, 0L, static_cast<long>(n_bins - 1));
        ++h.counts[b];
    }
    const double n = static_cast<double>(samples.size());
    for (std::size_t c : h.counts) {
        h.density.push_back(static_cast<double>(c) / (n * width));
    }
    return h;
}

Histogram empirical_hist_range(const std::vector<double>& samples, int n_bins) {
    if (samples.empty()) {
        throw EmptyResult("histogram of an empty sample");
    }
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    double lo = *mn;
    double hi = *mx;
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    return empirical_hist(samples, n_bins, lo, hi);
}

AcceptanceRates acceptance_report(const AcceptanceCounters& counters) {
    auto rate = [](std::uint64_t a, std::uint64_t n) {
        return n == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(n);
    };
    AcceptanceRates r;
    std::uint64_t acc = 0;
    std::uint64_t prop = 0;
    for (std::size_t k = 0; k < counters.accept_q.size(); ++k) {
        r.q.push_back(rate(counters.accept_q[k], counters.propose_q[k]));
        acc += counters.accept_q[k];
        prop += counters.propose_q[k];
    }
    r.q_mean = rate(acc, prop);
    r.nu = rate(counters.accept_nu, counters.propose_nu);
    r.d = rate(counters.accept_d, counters.propose_d);
    return r;
}

SummarySchedule SummarySchedule::from_config(const SamplerConfig& config) {
    SummarySchedule s;
    s.burn_in_states = config.burn_in_states;
    s.thin_states = config.thin_states;
    s.burn_in_params = config.burn_in_params;
    s.thin_params = config.thin_params;
    return s;
}

std::vector<std::vector<SpdMatrix>> retained_states(const ChainRecord& record, int burn_in, int thin) {
    if (thin < 1) {
        throw ConfigError("thinning interval must be at least 1");
    }
    std::vector<std::vector<SpdMatrix>> out;
    for (std::size_t i = 0; i < record.state_sweeps.size(); ++i) {
        const int s = record.state_sweeps[i];
        if (s >= burn_in && (s - burn_in) % thin == 0) {
            out.push_back(record.state_samples[i]);
        }
    }
    if (out.empty()) {
        throw EmptyResult("no stored latent states survive burn-in " + std::to_string(burn_in) + " / thinning " +
                          std::to_string(thin));
    }
    return out;
}

PosteriorSummary summarize(const ChainRecord& record, const SummarySchedule& schedule) {
    PosteriorSummary out;
    const auto states = retained_states(record, schedule.burn_in_states, schedule.thin_states);
    out.percentiles = correlation_percentiles(states, schedule.probs);
    out.nu_samples = thin_and_burn(record.nu_trace, schedule.burn_in_params, schedule.thin_params);
    out.d_samples = thin_and_burn(record.d_trace, schedule.burn_in_params, schedule.thin_params);
    out.nu_hist = empirical_hist_range(out.nu_samples, schedule.nu_bins);
    out.d_hist = empirical_hist(out.d_samples, schedule.d_bins, -1.0, 1.0);
    out.acceptance = acceptance_report(record.counters);
    out.state_samples = states.size();
    out.param_samples = out.nu_samples.size();
    return out;
}

}  // namespace mvsv
