#include "mvsv/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mvsv/io.hpp"

namespace mvsv {

namespace {

void dump_into(std::ostringstream& out, const Json& j, int indent, int depth) {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out << "{}";
                return;
            }
            out << '{' << nl;
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                out << (first ? "" : ",") << (first ? "" : nl) << pad << Json(key).dump() << (indent > 0 ? ": " : ":");
                dump_into(out, value, indent, depth + 1);
                first = false;
            }
            out << nl << close_pad << '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out << "[]";
                return;
            }
            // arrays of scalars stay on one line
            bool scalars = true;
            for (const auto& v : j) {
                scalars = scalars && !v.is_structured();
            }
            out << '[';
            bool first = true;
            for (const auto& v : j) {
                if (scalars) {
                    out << (first ? "" : ",");
                } else {
                    out << (first ? "" : ",") << nl << pad;
                }
                dump_into(out, v, indent, depth + 1);
                first = false;
            }
            if (!scalars) {
                out << nl << close_pad;
            }
            out << ']';
            return;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            if (std::isfinite(x)) {
                out << format_double(x);
            } else {
                out << "null";
            }
            return;
        }
        default:
            out << j.dump();
    }
}

template <typename F>
auto schema_guard(const char* what, F&& f) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw SchemaMismatch(std::string("malformed ") + what + ": " + e.what());
    }
}

std::vector<double> matrix_entries(const Matrix& m) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m.size()));
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            out.push_back(m(i, j));
        }
    }
    return out;
}

SpdMatrix matrix_from_entries(const std::vector<double>& v, int m) {
    if (v.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(m)) {
        throw SchemaMismatch("stored matrix has " + std::to_string(v.size()) + " entries, expected " +
                             std::to_string(m * m));
    }
    Matrix out(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            out(i, j) = v[static_cast<std::size_t>(i * m + j)];
        }
    }
    return SpdMatrix(out);
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
    std::ostringstream out;
    dump_into(out, j, indent, 0);
    out << '\n';
    return out.str();
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaMismatch("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

Json to_json(const SamplerConfig& c) {
    return Json{{"m", c.m},
                {"n_iters", c.n_iters},
                {"alpha_nu", c.alpha_nu},
                {"beta_nu", c.beta_nu},
                {"nu_var", c.nu_var},
                {"a_f", c.a_f},
                {"nu_init", c.nu_init},
                {"d_init", c.d_init},
                {"burn_in_states", c.burn_in_states},
                {"burn_in_params", c.burn_in_params},
                {"thin_states", c.thin_states},
                {"thin_params", c.thin_params},
                {"record_all_states", c.record_all_states},
                {"seed", c.seed}};
}

SamplerConfig sampler_config_from_json(const Json& j) {
    return schema_guard("sampler config", [&] {
        SamplerConfig c;
        c.m = j.at("m").get<int>();
        c.n_iters = j.at("n_iters").get<int>();
        c.alpha_nu = j.at("alpha_nu").get<double>();
        c.beta_nu = j.at("beta_nu").get<double>();
        c.nu_var = j.at("nu_var").get<double>();
        c.a_f = j.at("a_f").get<double>();
        c.nu_init = j.at("nu_init").get<double>();
        c.d_init = j.at("d_init").get<double>();
        c.burn_in_states = j.at("burn_in_states").get<int>();
        c.burn_in_params = j.at("burn_in_params").get<int>();
        c.thin_states = j.at("thin_states").get<int>();
        c.thin_params = j.at("thin_params").get<int>();
        c.record_all_states = j.at("record_all_states").get<bool>();
        c.seed = j.at("seed").get<std::uint64_t>();
        return c;
    });
}

Json to_json(const SummarySchedule& s) {
    return Json{{"burn_in_states", s.burn_in_states}, {"thin_states", s.thin_states},
                {"burn_in_params", s.burn_in_params}, {"thin_params", s.thin_params},
                {"nu_bins", s.nu_bins},               {"d_bins", s.d_bins},
                {"probs", s.probs}};
}

SummarySchedule schedule_from_json(const Json& j) {
    return schema_guard("summary schedule", [&] {
        SummarySchedule s;
        s.burn_in_states = j.at("burn_in_states").get<int>();
        s.thin_states = j.at("thin_states").get<int>();
        s.burn_in_params = j.at("burn_in_params").get<int>();
        s.thin_params = j.at("thin_params").get<int>();
        s.nu_bins = j.at("nu_bins").get<int>();
        s.d_bins = j.at("d_bins").get<int>();
        s.probs = j.at("probs").get<std::vector<double>>();
        return s;
    });
}

Json to_json(const Histogram& h) {
    return Json{{"lo", h.lo},         {"hi", h.hi},         {"edges", h.edges},
                {"density", h.density}, {"counts", h.counts}, {"clipped", h.clipped}};
}

Histogram histogram_from_json(const Json& j) {
    return schema_guard("histogram", [&] {
        Histogram h;
        h.lo = j.at("lo").get<double>();
        h.hi = j.at("hi").get<double>();
        h.edges = j.at("edges").get<std::vector<double>>();
        h.density = j.at("density").get<std::vector<double>>();
        h.counts = j.at("counts").get<std::vector<std::size_t>>();
        h.clipped = j.at("clipped").get<std::size_t>();
        return h;
    });
}

Json to_json(const CorrelationBands& bands, std::size_t n_samples) {
    Json pairs = Json::array();
    for (const auto& p : bands.pairs) {
        pairs.push_back(Json{{"i", p.i}, {"j", p.j}, {"values", p.values}});
    }
    return Json{{"probs", bands.probs}, {"n_samples", n_samples}, {"pairs", pairs}};
}

CorrelationBands bands_from_json(const Json& j) {
    return schema_guard("percentiles", [&] {
        CorrelationBands b;
        b.probs = j.at("probs").get<std::vector<double>>();
        for (const auto& p : j.at("pairs")) {
            b.pairs.push_back(
                {p.at("i").get<int>(), p.at("j").get<int>(), p.at("values").get<std::vector<std::vector<double>>>()});
        }
        return b;
    });
}

Json to_json(const AcceptanceRates& r) {
    return Json{{"q", r.q}, {"q_mean", r.q_mean}, {"nu", r.nu}, {"d", r.d}};
}

AcceptanceRates acceptance_from_json(const Json& j) {
    return schema_guard("acceptance", [&] {
        AcceptanceRates r;
        r.q = j.at("q").get<std::vector<double>>();
        r.q_mean = j.at("q_mean").get<double>();
        r.nu = j.at("nu").get<double>();
        r.d = j.at("d").get<double>();
        return r;
    });
}

Json summary_to_json(const PosteriorSummary& s, const Json& config, const Json& provenance) {
    return Json{{"config", config},
                {"percentiles", to_json(s.percentiles, s.state_samples)},
                {"nu_samples", s.nu_samples},
                {"d_samples", s.d_samples},
                {"nu_hist", to_json(s.nu_hist)},
                {"d_hist", to_json(s.d_hist)},
                {"acceptance", to_json(s.acceptance)},
                {"provenance", provenance}};
}

PosteriorSummary summary_from_json(const Json& j) {
    return schema_guard("summary", [&] {
        PosteriorSummary s;
        s.percentiles = bands_from_json(j.at("percentiles"));
        s.state_samples = j.at("percentiles").at("n_samples").get<std::size_t>();
        s.nu_samples = j.at("nu_samples").get<std::vector<double>>();
        s.d_samples = j.at("d_samples").get<std::vector<double>>();
        s.param_samples = s.nu_samples.size();
        s.nu_hist = histogram_from_json(j.at("nu_hist"));
        s.d_hist = histogram_from_json(j.at("d_hist"));
        s.acceptance = acceptance_from_json(j.at("acceptance"));
        return s;
    });
}

Json trace_to_json(const ChainRecord& r, const Json& config, const Json& provenance) {
    Json states = Json::array();
    for (const auto& sample : r.state_samples) {
        Json one = Json::array();
        for (const auto& q : sample) {
            one.push_back(matrix_entries(q.matrix()));
        }
        states.push_back(std::move(one));
    }
    const auto& c = r.counters;
    return Json{{"format", "mvsv-trace-1"},
                {"config", config},
                {"sampler", to_json(r.config)},
                {"steps", r.steps},
                {"nu_trace", r.nu_trace},
                {"d_trace", r.d_trace},
                {"state_sweeps", r.state_sweeps},
                {"states", states},
                {"counters",
                 Json{{"accept_q", c.accept_q},
                      {"propose_q", c.propose_q},
                      {"accept_nu", c.accept_nu},
                      {"propose_nu", c.propose_nu},
                      {"accept_d", c.accept_d},
                      {"propose_d", c.propose_d}}},
                {"provenance", provenance}};
}

ChainRecord trace_from_json(const Json& j) {
    return schema_guard("trace", [&] {
        if (!j.is_object() || j.value("format", std::string()) != "mvsv-trace-1") {
            throw SchemaMismatch("not an mvsv trace document");
        }
        ChainRecord r;
        r.config = sampler_config_from_json(j.at("sampler"));
        r.steps = j.at("steps").get<int>();
        r.nu_trace = j.at("nu_trace").get<std::vector<double>>();
        r.d_trace = j.at("d_trace").get<std::vector<double>>();
        r.state_sweeps = j.at("state_sweeps").get<std::vector<int>>();
        const auto& states = j.at("states");
        if (states.size() != r.state_sweeps.size()) {
            throw SchemaMismatch("trace has " + std::to_string(states.size()) + " state samples but " +
                                 std::to_string(r.state_sweeps.size()) + " sweep indices");
        }
        if (r.nu_trace.size() != r.d_trace.size()) {
            throw SchemaMismatch("nu and d traces differ in length");
        }
        for (const auto& sample : states) {
            if (sample.size() != static_cast<std::size_t>(r.steps)) {
                throw SchemaMismatch("stored state sample has the wrong number of time steps");
            }
            std::vector<SpdMatrix> one;
            one.reserve(sample.size());
            for (const auto& q : sample) {
                one.push_back(matrix_from_entries(q.get<std::vector<double>>(), r.config.m));
            }
            r.state_samples.push_back(std::move(one));
        }
        const auto& c = j.at("counters");
        r.counters.accept_q = c.at("accept_q").get<std::vector<std::uint64_t>>();
        r.counters.propose_q = c.at("propose_q").get<std::vector<std::uint64_t>>();
        r.counters.accept_nu = c.at("accept_nu").get<std::uint64_t>();
        r.counters.propose_nu = c.at("propose_nu").get<std::uint64_t>();
        r.counters.accept_d = c.at("accept_d").get<std::uint64_t>();
        r.counters.propose_d = c.at("propose_d").get<std::uint64_t>();
        if (r.counters.accept_q.size() != static_cast<std::size_t>(r.steps) ||
            r.counters.propose_q.size() != static_cast<std::size_t>(r.steps)) {
            throw SchemaMismatch("acceptance counters do not match the number of time steps");
        }
        return r;
    });
}

Json truth_to_json(const Trajectory& t, const ModelParams& params, std::uint64_t seed) {
    Json pairs = Json::array();
    for (int i = 0; i < params.m; ++i) {
        for (int j = i + 1; j < params.m; ++j) {
            std::vector<double> values;
            values.reserve(t.size());
            for (const auto& omega : t.omega_seq) {
                values.push_back(omega(i, j));
            }
            pairs.push_back(Json{{"i", i}, {"j", j}, {"values", values}});
        }
    }
    return Json{{"nu", params.nu},       {"d", params.d},         {"m", params.m},
                {"steps", t.size()},     {"seed", seed},          {"correlations", pairs}};
}

}  // namespace mvsv
