// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "checks.hpp"
#include "mvsv/distributions.hpp"
#include "mvsv/matrix.hpp"
#include "mvsv/model.hpp"
#include "mvsv/posterior.hpp"
#include "oracles.hpp"

using namespace mvsv;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double rel_err(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

// 1. Synthetic recovery on seeds 1..5 with the default schedule.
void synthetic_recovery() {
    const ModelParams truth{5.0, 0.8, 2};
    const int steps = 150;
    double coverage_sum = 0.0;
    int nu_hits = 0;
    int d_hits = 0;
    bool mixing = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        RngStream sim(seed);
        const auto traj = simulate(sim, truth, steps);
        auto cfg = SamplerConfig::defaults(2);
        cfg.seed = seed;
        const auto rec = run_chain(traj.y_seq, cfg);
        const auto sum = summarize(rec, SummarySchedule::from_config(cfg));
        int covered = 0;
        for (int k = 0; k < steps; ++k) {
            const auto& band = sum.percentiles.pairs[0].values[k];
            const double r = traj.omega_seq[k](0, 1);
            covered += (band[0] <= r && r <= band[2]) ? 1 : 0;
        }
        const double cov = covered / static_cast<double>(steps);
        coverage_sum += cov;
        const double nl = percentile(sum.nu_samples, 2.5), nh = percentile(sum.nu_samples, 97.5);
        const double dl = percentile(sum.d_samples, 2.5), dh = percentile(sum.d_samples, 97.5);
        const bool nu_in = nl <= truth.nu && truth.nu <= nh;
        const bool d_in = dl <= truth.d && truth.d <= dh;
        nu_hits += nu_in;
        d_hits += d_in;
        mixing = mixing && sum.acceptance.nu > 0.0 && sum.acceptance.nu < 1.0 && sum.acceptance.d > 0.0 &&
                 sum.acceptance.d < 1.0;
        std::printf("  seed %d: band coverage %.3f, nu 95%% [%.3f, %.3f]%s, d 95%% [%.3f, %.3f]%s, accept nu %.3f d %.3f\n",
                    static_cast<int>(seed), cov, nl, nh, nu_in ? "" : " (misses 5)", dl, dh,
                    d_in ? "" : " (misses 0.8)", sum.acceptance.nu, sum.acceptance.d);
        std::fflush(stdout);
    }
    const double mean_cov = coverage_sum / 5.0;
    report(1, mean_cov >= 0.85 && nu_hits >= 4 && d_hits >= 4 && mixing,
           fmt("mean band coverage %.3f (need >= 0.85)", mean_cov) + ", nu interval holds 5 in " +
               std::to_string(nu_hits) + "/5, d interval holds 0.8 in " + std::to_string(d_hits) +
               "/5 (need >= 4/5 each)" + (mixing ? "" : ", nu or d acceptance rate stuck at 0 or 1"));
}

// 2. Targets vs termwise transcriptions.
void oracle_equivalence() {
    std::mt19937_64 gen(2024);
    checks::Residuals worst;
    for (int ctx = 0; ctx < 5; ++ctx) {
        const auto c = checks::random_context(gen, 2, 10);
        const auto r = checks::target_residuals(gen, c, 100);
        worst.q_interior = std::max(worst.q_interior, r.q_interior);
        worst.q_terminal = std::max(worst.q_terminal, r.q_terminal);
        worst.nu = std::max(worst.nu, r.nu);
        worst.d = std::max(worst.d, r.d);
    }
    const double m = std::max({worst.q_interior, worst.q_terminal, worst.nu, worst.d});
    char buf[256];
    std::snprintf(buf, sizeof buf, "max residual Qk %.2e, QK %.2e, nu %.2e, d %.2e (need < 1e-6)", worst.q_interior,
                  worst.q_terminal, worst.nu, worst.d);
    report(2, m < 1e-6, buf);
}

// 3. Proposal parameter identities.
void proposal_constructions() {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_mode = 0.0, worst_var = 0.0, worst_mean = 0.0;
    bool bounds = true;
    for (int i = 0; i < 10000; ++i) {
        const int m = 1 + i % 5;
        const double mode = m + 1e-3 + 20.0 * u(gen);
        const double var = 1e-3 + 5.0 * u(gen);
        const auto p = shifted_gamma_params(mode, var, m);
        worst_mode = std::max(worst_mode, std::abs((p.alpha - 1.0) / p.beta - (mode - m)));
        worst_var = std::max(worst_var, std::abs(p.alpha / (p.beta * p.beta) - var));

        const double a_f = 1.5 + 8.0 * u(gen);
        const double d = -1.0 + 2.0 * u(gen);
        const auto b = beta_prop_param(d, a_f);
        bounds = bounds && b.a >= 1.0 / a_f && b.a <= a_f && std::abs(b.a * b.b - 1.0) < 1e-12;
        const double mu = 0.5 * (1.0 + d);
        const double raw = std::sqrt(mu / (1.0 - mu));
        if (raw > 1.0 / a_f && raw < a_f) {
            worst_mean = std::max(worst_mean, std::abs(2.0 * b.a * b.a / (b.a * b.a + 1.0) - 1.0 - d));
        }
    }
    for (double d : {-1.0, 1.0}) {
        const auto b = beta_prop_param(d, 5.0);
        bounds = bounds && b.a >= 0.2 && b.a <= 5.0;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "mode err %.1e, variance err %.1e, Beta mean err %.1e (need < 1e-10), clamp %s",
                  worst_mode, worst_var, worst_mean, bounds ? "respected" : "violated");
    report(3, worst_mode < 1e-10 && worst_var < 1e-10 && worst_mean < 1e-10 && bounds, buf);
}

// 4. Recorded MH decisions against oracle recomputation.
void mh_correctness() {
    const auto tally = checks::mh_oracle_check(4, 100);
    const char* names[] = {"interior Q", "terminal Q", "nu", "d"};
    bool ok = true;
    std::string detail;
    for (std::size_t b = 0; b < 4; ++b) {
        ok = ok && tally[b].checked == 100 && tally[b].matched == 100;
        detail += std::string(b ? ", " : "") + names[b] + " " + std::to_string(tally[b].matched) + "/" +
                  std::to_string(tally[b].checked) + " (" + std::to_string(tally[b].accepted) + " accepted)";
    }
    report(4, ok, detail);
}

// 5. Wishart moments.
void distribution_moments() {
    RngStream rng(5);
    const int n = 100000;
    std::vector<Matrix> scales;
    scales.push_back(Matrix::Identity(2, 2));
    Matrix s(2, 2);
    s << 2.0, 0.5, 0.5, 1.0;
    scales.push_back(s);
    s << 0.3, -0.2, -0.2, 0.5;
    scales.push_back(s);
    double worst_z = 0.0;
    for (double nu : {3.0, 5.5, 10.0}) {
        for (const auto& sc : scales) {
            const SpdMatrix spd(sc);
            Matrix acc = Matrix::Zero(2, 2), acc2 = Matrix::Zero(2, 2);
            for (int i = 0; i < n; ++i) {
                const Matrix x = sample_wishart(rng, nu, spd).matrix();
                acc += x;
                acc2 += x.cwiseProduct(x);
            }
            const Matrix mean = acc / n;
            const Matrix se = ((acc2 / n - mean.cwiseProduct(mean)) / n).cwiseSqrt();
            for (int i = 0; i < 2; ++i)
                for (int j = i; j < 2; ++j) worst_z = std::max(worst_z, std::abs(mean(i, j) - nu * sc(i, j)) / se(i, j));
        }
    }
    double worst_chi = 0.0;
    for (double nu : {1.5, 4.0, 9.0}) {
        double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
        for (int i = 0; i < n; ++i) {
            const double x = sample_wishart(rng, nu, SpdMatrix::identity(1))(0, 0);
            s1 += x;
            s2 += x * x;
            s3 += x * x * x;
            s4 += x * x * x * x;
        }
        const double mean = s1 / n;
        const double var = s2 / n - mean * mean;
        const double m4 = s4 / n - 4 * mean * s3 / n + 6 * mean * mean * s2 / n - 3 * mean * mean * mean * mean;
        worst_chi = std::max(worst_chi, std::abs(mean - nu) / std::sqrt(var / n));
        worst_chi = std::max(worst_chi, std::abs(var - 2.0 * nu) / std::sqrt((m4 - var * var) / n));
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "Wishart mean max |z| %.2f over 9 (nu, S) cells; m = 1 chi-square mean/variance max |z| %.2f (need <= 3)",
                  worst_z, worst_chi);
    report(5, worst_z <= 3.0 && worst_chi <= 3.0, buf);
}

// 6. Prior recovery, likelihood off, d = 0, nu free.
void prior_recovery() {
    const double z = checks::prior_recovery_z(6, 10, 40000, false);
    report(6, z <= 3.0, fmt("pooled Q_k^-1 mean vs I: max |z| %.2f (batch-means SE, need <= 3)", z));
}

// 7. Matrix kernels over 1000 random SPD inputs.
void matrix_kernels() {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double chol = 0.0, comp = 0.0, inv = 0.0, cong = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const int m = 2 + t % 3;
        const Matrix a = oracle::random_spd(gen, m);
        const SpdMatrix spd(a);
        const Matrix l = cholesky(a);
        chol = std::max(chol, (l * l.transpose() - a).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff());
        for (double p : {0.5, 2.0, -1.0, -0.8}) {
            comp = std::max(comp, rel_err(frac_power(frac_power(spd, p), 1.0 / p).matrix(), a));
        }
        inv = std::max(inv, rel_err(frac_power(spd, -1.0).matrix(), a.llt().solve(Matrix::Identity(m, m))));
        Vector dg(m);
        for (int i = 0; i < m; ++i) dg(i) = 0.1 + 5.0 * u(gen);
        const Matrix dad = dg.asDiagonal() * a * dg.asDiagonal();
        cong = std::max(cong, (to_correlation(SpdMatrix(dad)).matrix() - to_correlation(spd).matrix()).cwiseAbs().maxCoeff());
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "Cholesky round-trip %.1e (<= 1e-10), power composition %.1e (<= 1e-8), inverse %.1e (<= 1e-8), "
                  "congruence %.1e (<= 1e-10)",
                  chol, comp, inv, cong);
    report(7, chol <= 1e-10 && comp <= 1e-8 && inv <= 1e-8 && cong <= 1e-10, buf);
}

// 8. CLI pipeline determinism.
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(const std::string& args) {
    const std::string cmd = std::string(MVSV_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void pipeline_determinism() {
    const fs::path root = fs::temp_directory_path() / "mvsv_acceptance_pipeline";
    fs::remove_all(root);
    std::string texts[2];
    bool ran = true;
    for (int r = 0; r < 2; ++r) {
        const std::string d = (root / ("run" + std::to_string(r))).string();
        ran = ran && run("simulate --steps 150 --seed 11 --out " + d + "/sim") == 0;
        ran = ran && run("fit --input " + d + "/sim/observations.csv --iters 2000 --seed 12 --out " + d + "/fit") == 0;
        ran = ran && run("summarize --trace " + d + "/fit/trace.json --out " + d + "/sum") == 0;
        texts[r] = slurp(fs::path(d) / "sum" / "summary.json");
    }
    const bool same = ran && !texts[0].empty() && texts[0] == texts[1];
    report(8, same, ran ? (same ? "summary.json identical across two runs (" + std::to_string(texts[0].size()) + " bytes)"
                                : std::string("summary.json differs between runs"))
                        : std::string("a pipeline command failed"));
    fs::remove_all(root);
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> steps{synthetic_recovery, oracle_equivalence, proposal_constructions,
                                                   mh_correctness,     distribution_moments, prior_recovery,
                                                   matrix_kernels,     pipeline_determinism};
    for (std::size_t i = 0; i < steps.size(); ++i) {
        try {
            steps[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), false, std::string("threw: ") + e.what());
        }
    }
    std::printf("%d of 8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}
