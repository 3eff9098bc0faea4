#include "gmin/classical_mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmin/parallel.hpp"

namespace gmin {

double grover_success_prob(std::uint64_t k, std::uint64_t n, long long p) {
    if (n == 0 || k > n || p < 0) throw ContractError("need 0 <= k <= N, N > 0, p >= 0");
    if (k == 0) return 0.0;
    if (k == n) return 1.0;
    const double theta = std::asin(std::sqrt(static_cast<double>(k) / static_cast<double>(n)));
    const double s = std::sin((2.0 * static_cast<double>(p) + 1.0) * theta);
    return s * s;
}

TrialResult run_gmin_mc(std::uint64_t n, const GminConfig& config, Rng& rng) {
    config.validate();
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const long long budget = config.budget(n);
    TrialResult r;
    r.v = uniform_int(rng, 0, n - 1);
    r.v_best = r.v;
    r.true_min = 0;
    if (r.v_best == 0) r.calls_to_solution = 0;
    double t = 1.0;
    while (r.effective_calls < budget) {
        if (config.run_until_solution && r.calls_to_solution >= 0) break;
        const long long p = sample_step_count(t, rng);
        r.effective_calls += p + 1;
        const std::uint64_t w = r.v_best;
        const bool marked = uniform01(rng) < grover_success_prob(w, n, p);
        const Label f = marked ? uniform_int(rng, 0, w - 1) : uniform_int(rng, w, n - 1);
        if (f < r.v_best) {
            r.v_best = f;
            t = std::max(1.0, config.beta * t);
        } else {
            t = std::min(config.gamma * t, sqrt_n);
        }
        if (r.calls_to_solution < 0 && r.v_best == 0) r.calls_to_solution = r.effective_calls;
    }
    r.all_calls = r.effective_calls;
    r.x_best = (n - r.v) % n;  // the certificate for AddModN, once solved
    r.succeeded = r.v_best == 0;
    return r;
}

std::vector<TrialResult> run_gmin_mc_batch(std::uint64_t n, const GminConfig& config, long long trials,
                                           std::uint64_t seed) {
    std::vector<TrialResult> out(static_cast<std::size_t>(trials));
    for (long long i = 0; i < trials; ++i) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(i));
        out[static_cast<std::size_t>(i)] = run_gmin_mc(n, config, rng);
        out[static_cast<std::size_t>(i)].trial_id = static_cast<std::uint64_t>(i);
        out[static_cast<std::size_t>(i)].seed = stream_seed(seed, static_cast<std::uint64_t>(i));
    }
    return out;
}

std::vector<SurveyRow> survey_beta_gamma(const std::vector<double>& beta_grid,
                                         const std::vector<double>& gamma_grid, std::uint64_t n,
                                         long long trials, std::uint64_t seed, int workers) {
    std::vector<SurveyRow> rows(beta_grid.size() * gamma_grid.size());
    parallel_for(rows.size(), workers, [&](std::size_t idx) {
        const std::size_t i = idx / gamma_grid.size(), j = idx % gamma_grid.size();
        GminConfig cfg;
        cfg.beta = beta_grid[i];
        cfg.gamma = gamma_grid[j];
        cfg.run_until_solution = true;
        auto batch = run_gmin_mc_batch(n, cfg, trials, stream_seed(seed, idx));
        SurveyRow& row = rows[idx];
        row.beta = cfg.beta;
        row.gamma = cfg.gamma;
        row.N = n;
        row.trials = trials;
        try {
            row.fit = fit_rate_parameter(estimate_success_curve(batch, n));
        } catch (const FitDomainError&) {
            // Too few curve points in the window: leave the row in place as NaN.
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.fit.a = row.fit.a_err = row.fit.r2 = row.fit.a_eff = row.fit.a_eff_err = nan;
        }
    });
    return rows;
}

}  // namespace gmin
