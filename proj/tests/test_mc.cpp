#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gmin/analysis.hpp"
#include "gmin/classical_mc.hpp"

using namespace gmin;

TEST(GroverProb, ClosedFormCases) {
    EXPECT_NEAR(grover_success_prob(1, 4, 1), 1.0, 1e-12);
    for (std::uint64_t k = 0; k <= 16; ++k) EXPECT_NEAR(grover_success_prob(k, 16, 0), k / 16.0, 1e-12);
    for (long long p = 0; p < 6; ++p) EXPECT_EQ(grover_success_prob(0, 16, p), 0.0);
    EXPECT_EQ(grover_success_prob(16, 16, 3), 1.0);
    EXPECT_THROW(grover_success_prob(17, 16, 0), ContractError);
}

TEST(ClassicalMc, MatchesFullSimulatorAtSixteen) {
    const int M = 10000;
    GminConfig cfg;
    cfg.run_until_solution = true;
    const auto c = GminCircuits::build({GroupSpec::add_mod_n(4)});
    std::vector<long long> full, mc;
    for (int i = 0; i < M; ++i) {
        Rng rng = make_stream(71, i);
        const Label v = uniform_int(rng, 0, 15);
        full.push_back(run_gmin(c, v, cfg, Engine{}, rng).calls_to_solution);
    }
    for (const auto& r : run_gmin_mc_batch(16, cfg, M, 72)) mc.push_back(r.calls_to_solution);
    EXPECT_LT(ks_statistic(full, mc), ks_critical(M, M, 0.01));
}

TEST(ClassicalMc, TrialInvariants) {
    GminConfig cfg;
    for (const auto& r : run_gmin_mc_batch(256, cfg, 500, 3)) {
        EXPECT_LE(r.v_best, r.v);
        EXPECT_EQ(r.succeeded, r.v_best == 0);
        if (r.succeeded) EXPECT_EQ((r.v + r.x_best) % 256, 0u);
        EXPECT_LE(r.effective_calls, cfg.budget(256) + 16);
    }
}

TEST(ClassicalMc, RateParameterInWindow) {
    GminConfig cfg;
    cfg.run_until_solution = true;
    const std::uint64_t N = 1 << 16;
    const auto fit = fit_rate_parameter(estimate_success_curve(run_gmin_mc_batch(N, cfg, 20000, 81), N));
    EXPECT_GE(fit.a, 2.0);
    EXPECT_LE(fit.a, 4.0);
    EXPECT_GE(fit.r2, 0.99);
}

TEST(ClassicalMc, BetaShortensRuns) {
    const std::uint64_t N = 1 << 12;
    GminConfig with_beta, no_beta;
    with_beta.run_until_solution = no_beta.run_until_solution = true;
    no_beta.beta = 0.0;
    auto mean_calls = [&](const GminConfig& cfg) {
        double s = 0;
        const auto rows = run_gmin_mc_batch(N, cfg, 8000, 91);
        for (const auto& r : rows) s += static_cast<double>(r.calls_to_solution);
        return s / static_cast<double>(rows.size());
    };
    EXPECT_LT(mean_calls(with_beta), mean_calls(no_beta));
}

TEST(ClassicalMc, MedianScalesAsSquareRoot) {
    GminConfig cfg;
    cfg.run_until_solution = true;
    std::vector<double> xs, ys;
    for (int n = 4; n <= 12; ++n) {
        const auto rows = run_gmin_mc_batch(std::uint64_t{1} << n, cfg, 4000, 100 + n);
        std::vector<long long> calls;
        for (const auto& r : rows) calls.push_back(r.calls_to_solution);
        std::nth_element(calls.begin(), calls.begin() + calls.size() / 2, calls.end());
        xs.push_back(n * std::log(2.0));
        ys.push_back(std::log(static_cast<double>(calls[calls.size() / 2])));
    }
    const double xm = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double ym = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - xm) * (ys[i] - ym);
        sxx += (xs[i] - xm) * (xs[i] - xm);
    }
    EXPECT_NEAR(sxy / sxx, 0.5, 0.05);
}

TEST(Survey, FinitePositiveAndStable) {
    const std::vector<double> betas{0.85, 0.95}, gammas{1.1, 1.2};
    const auto rows = survey_beta_gamma(betas, gammas, 1024, 3000, 5, 1);
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& r : rows) {
        EXPECT_TRUE(std::isfinite(r.fit.a));
        EXPECT_GT(r.fit.a, 0);
        EXPECT_EQ(r.N, 1024u);
    }
    EXPECT_EQ(rows[2].beta, 0.95);
    EXPECT_EQ(rows[1].gamma, 1.2);
    // Doubling the trial count moves a by less than the combined fit errors.
    const auto doubled = survey_beta_gamma(betas, gammas, 1024, 6000, 6, 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double tol = 3 * std::hypot(rows[i].fit.a_eff_err, doubled[i].fit.a_eff_err);
        EXPECT_NEAR(rows[i].fit.a, doubled[i].fit.a, tol) << i;
    }
}

TEST(SuccessCurveEstimate, StepFunctions) {
    auto c = estimate_success_curve(std::vector<long long>{0, 0, 0}, 16);
    ASSERT_EQ(c.P.size(), 1u);
    EXPECT_EQ(c.P[0], 1.0);
    c = estimate_success_curve(std::vector<long long>{7}, 16);
    ASSERT_EQ(c.T.size(), 8u);
    for (int t = 0; t < 7; ++t) EXPECT_EQ(c.P[t], 0.0);
    EXPECT_EQ(c.P[7], 1.0);
    c = estimate_success_curve(std::vector<long long>{2, -1, 4, 2}, 16);
    EXPECT_EQ(c.M, 4);
    EXPECT_EQ(c.P[2], 0.5);
    EXPECT_EQ(c.P.back(), 0.75);
    for (std::size_t i = 1; i < c.P.size(); ++i) EXPECT_GE(c.P[i], c.P[i - 1]);
}

TEST(RateFit, ExactSyntheticCurve) {
    SuccessCurve c;
    c.N = 1024;
    c.M = 100000;
    const double a = 3.0;
    for (long long t = 0; t <= 400; ++t) {
        c.T.push_back(t);
        c.P.push_back(1 - std::exp(-double(t * t) / (a * a * 1024)));
    }
    const auto fit = fit_rate_parameter(c);
    EXPECT_NEAR(fit.a, 3.0, 0.02);
    EXPECT_GE(fit.r2, 0.9999);
    EXPECT_NEAR(fit.a_eff, 3.0, 0.03);
    EXPECT_GE(fit.a_eff_err, 0.0);
    EXPECT_GE(fit.points, 5);
}

TEST(RateFit, SampledCurveRoundTrip) {
    // Draw calls from P = 1 - exp(-T^2/(a^2 N)) by inversion and refit.
    const double a = 3.0;
    const std::uint64_t N = 1024;
    Rng rng(13);
    std::vector<long long> calls;
    for (int i = 0; i < 40000; ++i) {
        const double u = uniform01(rng);
        calls.push_back(static_cast<long long>(std::ceil(a * 32 * std::sqrt(-std::log1p(-u)))));
    }
    const auto fit = fit_rate_parameter(estimate_success_curve(calls, N));
    EXPECT_NEAR(fit.a, a, std::max(3 * fit.a_err, 0.03 * a));
    EXPECT_NEAR(fit.a_eff, a, 3 * fit.a_eff_err + 0.03 * a);
}

TEST(RateFit, TooFewPointsIsRejected) {
    SuccessCurve c;
    c.N = 16;
    c.M = 4;
    c.T = {0, 1, 2, 3};
    c.P = {0.0, 0.25, 0.5, 1.0};
    EXPECT_THROW(fit_rate_parameter(c), FitDomainError);
}

TEST(Ks, StatisticAndCritical) {
    EXPECT_EQ(ks_statistic({1, 2, 3}, {1, 2, 3}), 0.0);
    EXPECT_EQ(ks_statistic({1, 2}, {5, 6}), 1.0);
    EXPECT_EQ(ks_statistic({-1}, {5}), 1.0);
    EXPECT_NEAR(ks_statistic({1, 2, 3, 4}, {3, 4, 5, 6}), 0.5, 1e-12);
    EXPECT_NEAR(ks_critical(100, 100, 0.05), 1.3581 * std::sqrt(2.0 / 100), 1e-3);
}

TEST(Report, AggregatesFromRows) {
    std::vector<TrialResult> rows(3);
    rows[0].runtime_units = 10;
    rows[0].succeeded = true;
    rows[0].effective_calls = 4;
    rows[0].all_calls = 6;
    rows[0].errors_detected = 1;
    rows[1].runtime_units = 20;
    rows[1].effective_calls = 5;
    rows[1].all_calls = 5;
    rows[2].runtime_units = 30;
    rows[2].succeeded = true;
    const auto rep = RunReport::from_rows(rows);
    EXPECT_DOUBLE_EQ(rep.mean_runtime, 20.0);
    EXPECT_DOUBLE_EQ(rep.success_rate, 2.0 / 3);
    EXPECT_EQ(rep.total_c1, 9);
    EXPECT_EQ(rep.total_c2, 11);
    EXPECT_EQ(rep.total_errors, 1);
}
