// mvsv: dynamic correlation estimation with a Wishart stochastic volatility
// model.
//
//   mvsv simulate --out DIR [--nu 5 --d 0.8 --m 2 --steps 150 --seed 1]
//   mvsv fit --input data.csv --out DIR [sampler flags]
//   mvsv summarize --trace DIR/trace.json --out DIR2 [schedule flags]
//
// Exit codes: 0 success, 2 configuration error, 3 data error, 4 IO error.

#include <iostream>

#include <CLI11.hpp>

#include "mvsv/commands.hpp"

namespace {

void add_sampler_flags(CLI::App& app, mvsv::SamplerOptions& opt) {
    app.add_option("--iters", opt.n_iters, "Total MCMC sweeps [10000]");
    app.add_option("--alpha-nu", opt.alpha_nu, "Gamma prior shape on nu - m [m + 2]");
    app.add_option("--beta-nu", opt.beta_nu, "Gamma prior rate on nu - m [1]");
    app.add_option("--nu-var", opt.nu_var, "Variance of the nu proposal [0.1]");
    app.add_option("--a-f", opt.a_f, "Clamp on the d proposal shape [5]");
    app.add_option("--nu-init", opt.nu_init, "Initial nu [m + (alpha_nu - 1) / beta_nu]");
    app.add_option("--d-init", opt.d_init, "Initial d [0.5]");
    app.add_option("--burn-states", opt.burn_in_states, "Burn-in sweeps for latent states [1000]");
    app.add_option("--burn-params", opt.burn_in_params, "Burn-in sweeps for nu and d [4000]");
    app.add_option("--thin-states", opt.thin_states, "Thinning interval for latent states [100]");
    app.add_option("--thin-params", opt.thin_params, "Thinning interval for nu and d [200]");
    app.add_flag("--record-all-states", opt.record_all_states, "Store latent states from every sweep");
    app.add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic correlation estimation with a Wishart stochastic volatility model"};
    app.require_subcommand(1);
    app.set_version_flag("--version", mvsv::tool_version());

    mvsv::SimulateConfig sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Simulate observations and ground truth from the model");
    sim_cmd->add_option("--nu", sim.params.nu, "Wishart degrees of freedom")->capture_default_str();
    sim_cmd->add_option("--d", sim.params.d, "Persistence exponent")->capture_default_str();
    sim_cmd->add_option("--m", sim.params.m, "Number of channels")->capture_default_str();
    sim_cmd->add_option("--steps,-K", sim.steps, "Number of time points")->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    sim_cmd->add_option("--out", sim.out_dir, "Output directory")->required();

    mvsv::FitConfig fit;
    auto* fit_cmd = app.add_subcommand("fit", "Estimate correlation trajectories from a CSV time series");
    fit_cmd->add_option("--input", fit.input, "CSV with one column per channel")->required();
    fit_cmd->add_option("--out", fit.out_dir, "Output directory")->required();
    bool no_standardize = false;
    fit_cmd->add_flag("--no-standardize", no_standardize, "Use the data as given");
    fit_cmd->add_option("--chains", fit.chains, "Independent chains run concurrently")->capture_default_str();
    fit_cmd->add_option("--nu-bins", fit.nu_bins, "Histogram bins for nu")->capture_default_str();
    fit_cmd->add_option("--d-bins", fit.d_bins, "Histogram bins for d")->capture_default_str();
    add_sampler_flags(*fit_cmd, fit.sampler);

    mvsv::SummarizeConfig sum;
    auto* sum_cmd = app.add_subcommand("summarize", "Re-summarize a stored trace");
    sum_cmd->add_option("--trace", sum.trace, "trace.json written by fit")->required();
    sum_cmd->add_option("--out", sum.out_dir, "Output directory")->required();
    sum_cmd->add_option("--burn-states", sum.burn_in_states, "Burn-in sweeps for latent states");
    sum_cmd->add_option("--thin-states", sum.thin_states, "Thinning interval for latent states");
    sum_cmd->add_option("--burn-params", sum.burn_in_params, "Burn-in sweeps for nu and d");
    sum_cmd->add_option("--thin-params", sum.thin_params, "Thinning interval for nu and d");
    sum_cmd->add_option("--nu-bins", sum.nu_bins, "Histogram bins for nu");
    sum_cmd->add_option("--d-bins", sum.d_bins, "Histogram bins for d");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*sim_cmd) {
            mvsv::cmd_simulate(sim);
        } else if (*fit_cmd) {
            fit.standardize = !no_standardize;
            mvsv::cmd_fit(fit, std::cerr);
        } else if (*sum_cmd) {
            mvsv::cmd_summarize(sum);
        }
    } catch (const mvsv::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
