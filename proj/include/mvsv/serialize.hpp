#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "mvsv/model.hpp"
#include "mvsv/posterior.hpp"
#include "mvsv/sampler.hpp"

namespace mvsv {

using Json = nlohmann::ordered_json;

/// JSON text with every floating-point value written at 17 significant
/// digits (nlohmann's own dump uses the shortest round-trip form).
std::string dump_json(const Json& j, int indent = 2);
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json to_json(const SamplerConfig& config);
SamplerConfig sampler_config_from_json(const Json& j);

Json to_json(const SummarySchedule& schedule);
SummarySchedule schedule_from_json(const Json& j);

Json to_json(const Histogram& h);
Histogram histogram_from_json(const Json& j);

Json to_json(const CorrelationBands& bands, std::size_t n_samples);
CorrelationBands bands_from_json(const Json& j);

Json to_json(const AcceptanceRates& rates);
AcceptanceRates acceptance_from_json(const Json& j);

/// Summary document with top-level keys config, percentiles, nu_samples,
/// d_samples, nu_hist, d_hist, acceptance, provenance.
Json summary_to_json(const PosteriorSummary& summary, const Json& config, const Json& provenance);
PosteriorSummary summary_from_json(const Json& j);

/// Full chain record, the input of `summarize`.
Json trace_to_json(const ChainRecord& record, const Json& config, const Json& provenance);
ChainRecord trace_from_json(const Json& j);

/// Ground truth of a simulation: off-diagonal correlations per k plus the
/// generating parameters.
Json truth_to_json(const Trajectory& trajectory, const ModelParams& params, std::uint64_t seed);

}  // namespace mvsv
