#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "mvsv/model.hpp"
#include "mvsv/posterior.hpp"
#include "mvsv/sampler.hpp"
#include "mvsv/serialize.hpp"

namespace mvsv {

/// Sampler settings as given on the command line. Unset values fall back to
/// SamplerConfig::defaults(m) once the data dimension is known; when only
/// the sweep count is given, the burn-in and thinning schedule is scaled
/// with it (10% / 40% burn-in, n/100 and n/50 thinning).
struct SamplerOptions {
    std::optional<int> n_iters;
    std::optional<double> alpha_nu;
    std::optional<double> beta_nu;
    std::optional<double> nu_var;
    std::optional<double> a_f;
    std::optional<double> nu_init;
    std::optional<double> d_init;
    std::optional<int> burn_in_states;
    std::optional<int> burn_in_params;
    std::optional<int> thin_states;
    std::optional<int> thin_params;
    bool record_all_states = false;
    std::uint64_t seed = 1;

    SamplerConfig resolve(int m) const;
};

struct SimulateConfig {
    ModelParams params;
    int steps = 150;
    std::uint64_t seed = 1;
    std::filesystem::path out_dir;
};

struct FitConfig {
    std::filesystem::path input;
    std::filesystem::path out_dir;
    SamplerOptions sampler;
    bool standardize = true;
    bool write_trace_csv = true;
    int chains = 1;
    int nu_bins = 20;
    int d_bins = 20;
};

struct SummarizeConfig {
    std::filesystem::path trace;
    std::filesystem::path out_dir;
    std::optional<int> burn_in_states;
    std::optional<int> thin_states;
    std::optional<int> burn_in_params;
    std::optional<int> thin_params;
    std::optional<int> nu_bins;
    std::optional<int> d_bins;
};

/// Writes observations.csv and truth.json into out_dir.
void cmd_simulate(const SimulateConfig& config);

/// Loads, standardizes and fits; writes summary.json, trace.json and the
/// plot-ready CSVs into out_dir (chain_<i>/ subdirectories when chains > 1).
/// Diagnostics go to `log`.
void cmd_fit(const FitConfig& config, std::ostream& log);

/// Re-summarizes a trace.json with an optionally different schedule.
void cmd_summarize(const SummarizeConfig& config);

/// Writes summary.json and the plot CSVs for one summarized chain.
void write_summary_outputs(const std::filesystem::path& out_dir, const PosteriorSummary& summary, const Json& config,
                           const Json& provenance);

std::string tool_version();

}  // namespace mvsv
