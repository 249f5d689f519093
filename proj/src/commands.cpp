#include "mvsv/commands.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include "mvsv/io.hpp"

namespace mvsv {

namespace {

void ensure_dir(const std::filesystem::path& dir) {
    if (dir.empty()) {
        throw ConfigError("an output directory is required");
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
    }
}

void write_bands_csv(const std::filesystem::path& path, const CorrelationBands& bands) {
    std::ostringstream out;
    out << "k,i,j";
    for (double p : bands.probs) {
        out << ",p" << format_double(p);
    }
    out << '\n';
    for (const auto& pair : bands.pairs) {
        for (std::size_t k = 0; k < pair.values.size(); ++k) {
            out << k + 1 << ',' << pair.i << ',' << pair.j;
            for (double v : pair.values[k]) {
                out << ',' << format_double(v);
            }
            out << '\n';
        }
    }
    write_text_file(path, out.str());
}

void write_hist_csv(const std::filesystem::path& path, const Histogram& h) {
    std::ostringstream out;
    out << "bin_lo,bin_hi,count,density\n";
    for (std::size_t b = 0; b < h.density.size(); ++b) {
        out << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ',' << h.counts[b] << ','
            << format_double(h.density[b]) << '\n';
    }
    write_text_file(path, out.str());
}

// FNV-1a over the file bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Input identity by name and content, so relocating the data changes nothing.
Json input_json(const std::filesystem::path& path) {
    return Json{{"name", path.filename().string()}, {"fnv1a64", file_digest(path)}};
}

Json fit_config_json(const FitConfig& fit, const SamplerConfig& sampler, const SummarySchedule& schedule) {
    return Json{{"input", input_json(fit.input)},
                {"standardize", fit.standardize},
                {"sampler", to_json(sampler)},
                {"schedule", to_json(schedule)}};
}

Json provenance_json(std::uint64_t seed, const Json& input, int chain) {
    return Json{{"generator", "mvsv"}, {"version", tool_version()}, {"seed", seed}, {"input", input}, {"chain", chain}};
}

}  // namespace

std::string tool_version() { return "1.0.0"; }

SamplerConfig SamplerOptions::resolve(int m) const {
    SamplerConfig c = SamplerConfig::defaults(m);
    if (alpha_nu) c.alpha_nu = *alpha_nu;
    if (beta_nu) c.beta_nu = *beta_nu;
    c.nu_init = nu_init ? *nu_init : m + (c.alpha_nu - 1.0) / c.beta_nu;
    if (nu_var) c.nu_var = *nu_var;
    if (a_f) c.a_f = *a_f;
    if (d_init) c.d_init = *d_init;
    if (n_iters) {
        c.n_iters = *n_iters;
        c.burn_in_states = c.n_iters / 10;
        c.burn_in_params = 2 * c.n_iters / 5;
        c.thin_states = std::max(1, c.n_iters / 100);
        c.thin_params = std::max(1, c.n_iters / 50);
    }
    if (burn_in_states) c.burn_in_states = *burn_in_states;
    if (burn_in_params) c.burn_in_params = *burn_in_params;
    if (thin_states) c.thin_states = *thin_states;
    if (thin_params) c.thin_params = *thin_params;
    c.record_all_states = record_all_states;
    c.seed = seed;
    return c;
}

void cmd_simulate(const SimulateConfig& config) {
    config.params.validate();
    if (config.steps < 1) {
        throw ConfigError("K must be at least 1");
    }
    ensure_dir(config.out_dir);
    RngStream rng(config.seed);
    const Trajectory t = simulate(rng, config.params, config.steps);

    Matrix y(static_cast<Index>(t.size()), config.params.m);
    for (std::size_t k = 0; k < t.size(); ++k) {
        y.row(static_cast<Index>(k)) = t.y_seq[k].transpose();
    }
    std::vector<std::string> header;
    for (int c = 0; c < config.params.m; ++c) {
        header.push_back("y" + std::to_string(c + 1));
    }
    std::ostringstream csv;
    write_csv(csv, header, y);
    write_text_file(config.out_dir / "observations.csv", csv.str());

    Json truth = truth_to_json(t, config.params, config.seed);
    truth["provenance"] = provenance_json(config.seed, nullptr, 0);
    write_text_file(config.out_dir / "truth.json", dump_json(truth));
}

void write_summary_outputs(const std::filesystem::path& out_dir, const PosteriorSummary& summary, const Json& config,
                           const Json& provenance) {
    ensure_dir(out_dir);
    write_text_file(out_dir / "summary.json", dump_json(summary_to_json(summary, config, provenance)));
    write_bands_csv(out_dir / "correlation_bands.csv", summary.percentiles);
    write_hist_csv(out_dir / "nu_hist.csv", summary.nu_hist);
    write_hist_csv(out_dir / "d_hist.csv", summary.d_hist);
}

void cmd_fit(const FitConfig& config, std::ostream& log) {
    if (config.chains < 1) {
        throw ConfigError("--chains must be at least 1");
    }
    const RawTable raw = load_csv(config.input);
    const Dataset data = config.standardize ? standardize(raw) : as_dataset(raw);
    const int m = static_cast<int>(data.channels());
    const auto steps = data.steps();
    if (m >= steps) {
        log << "warning: " << m << " channels but only " << steps << " time points\n";
    }
    const SamplerConfig base = config.sampler.resolve(m);
    base.validate();
    const std::vector<Vector> y = data.observations();
    ensure_dir(config.out_dir);

    const int n = config.chains;
    std::vector<SamplerConfig> configs(static_cast<std::size_t>(n), base);
    for (int c = 1; c < n; ++c) {
        configs[static_cast<std::size_t>(c)].seed = RngStream(base.seed).split(static_cast<std::uint64_t>(c)).seed();
    }
    std::vector<std::optional<ChainRecord>> records(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    auto work = [&](int c) {
        try {
            records[static_cast<std::size_t>(c)] = run_chain(y, configs[static_cast<std::size_t>(c)]);
        } catch (...) {
            errors[static_cast<std::size_t>(c)] = std::current_exception();
        }
    };
    if (n == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (int c = 0; c < n; ++c) {
            pool.emplace_back(work, c);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    for (int c = 0; c < n; ++c) {
        const ChainRecord& record = *records[static_cast<std::size_t>(c)];
        SummarySchedule schedule = SummarySchedule::from_config(record.config);
        schedule.nu_bins = config.nu_bins;
        schedule.d_bins = config.d_bins;
        const PosteriorSummary summary = summarize(record, schedule);
        const Json cfg = fit_config_json(config, record.config, schedule);
        const Json prov = provenance_json(record.config.seed, input_json(config.input), c);
        const auto dir = n == 1 ? config.out_dir : config.out_dir / ("chain_" + std::to_string(c));
        write_summary_outputs(dir, summary, cfg, prov);
        write_text_file(dir / "trace.json", dump_json(trace_to_json(record, cfg, prov), 0));
        if (config.write_trace_csv) {
            std::ostringstream out;
            out << "sweep,nu,d\n";
            const auto total = record.nu_trace.size();
            for (auto s = static_cast<std::size_t>(schedule.burn_in_params); s < total;
                 s += static_cast<std::size_t>(schedule.thin_params)) {
                out << s << ',' << format_double(record.nu_trace[s]) << ',' << format_double(record.d_trace[s]) << '\n';
            }
            write_text_file(dir / "params.csv", out.str());
        }
        log << "chain " << c << ": " << summary.state_samples << " latent samples, " << summary.param_samples
            << " parameter samples; acceptance Q " << summary.acceptance.q_mean << ", nu " << summary.acceptance.nu
            << ", d " << summary.acceptance.d << '\n';
    }
}

void cmd_summarize(const SummarizeConfig& config) {
    const Json trace = read_json_file(config.trace);
    const ChainRecord record = trace_from_json(trace);
    Json cfg = trace.contains("config") ? trace.at("config") : Json::object();
    SummarySchedule schedule = SummarySchedule::from_config(record.config);
    if (cfg.contains("schedule")) {
        schedule = schedule_from_json(cfg.at("schedule"));
    }
    if (config.burn_in_states) schedule.burn_in_states = *config.burn_in_states;
    if (config.thin_states) schedule.thin_states = *config.thin_states;
    if (config.burn_in_params) schedule.burn_in_params = *config.burn_in_params;
    if (config.thin_params) schedule.thin_params = *config.thin_params;
    if (config.nu_bins) schedule.nu_bins = *config.nu_bins;
    if (config.d_bins) schedule.d_bins = *config.d_bins;

    const PosteriorSummary summary = summarize(record, schedule);
    cfg["schedule"] = to_json(schedule);
    const Json prov = trace.contains("provenance") ? trace.at("provenance") : Json::object();
    write_summary_outputs(config.out_dir, summary, cfg, prov);
}

}  // namespace mvsv
