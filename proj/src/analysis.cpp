#include "gmin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gmin {

SuccessCurve estimate_success_curve(const std::vector<long long>& calls, std::uint64_t n) {
    SuccessCurve c;
    c.M = static_cast<long long>(calls.size());
    c.N = n;
    long long t_max = 0;
    for (long long x : calls) t_max = std::max(t_max, x);
    std::vector<long long> hist(static_cast<std::size_t>(t_max) + 1, 0);
    for (long long x : calls)
        if (x >= 0) ++hist[static_cast<std::size_t>(x)];
    long long cum = 0;
    for (long long t = 0; t <= t_max; ++t) {
        cum += hist[static_cast<std::size_t>(t)];
        c.T.push_back(t);
        c.P.push_back(c.M == 0 ? 0.0 : static_cast<double>(cum) / static_cast<double>(c.M));
    }
    return c;
}

SuccessCurve estimate_success_curve(const std::vector<TrialResult>& trials, std::uint64_t n) {
    std::vector<long long> calls;
    calls.reserve(trials.size());
    for (const auto& t : trials) calls.push_back(t.calls_to_solution);
    return estimate_success_curve(calls, n);
}

RateFit fit_rate_parameter(const SuccessCurve& curve) {
    RateFit fit;
    const double sqrt_n = std::sqrt(static_cast<double>(curve.N));
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < curve.T.size(); ++i) {
        const double p = curve.P[i];
        if (p < fit.window_low || p > fit.window_high) continue;
        xs.push_back(static_cast<double>(curve.T[i]) / sqrt_n);
        ys.push_back(std::sqrt(-std::log1p(-p)));
    }
    fit.points = static_cast<int>(xs.size());
    if (xs.size() < 5)
        throw FitDomainError("only " + std::to_string(xs.size()) +
                             " curve points inside the fit window [0.2, 0.995]; need 5");

    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = sxy / sxx;
    const double y_mean = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ss_res += std::pow(ys[i] - slope * xs[i], 2);
        ss_tot += std::pow(ys[i] - y_mean, 2);
    }
    fit.a = 1.0 / slope;
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    const double slope_se = std::sqrt(ss_res / static_cast<double>(xs.size() - 1) / sxx);
    fit.a_err = slope_se / (slope * slope);

    // Successive differences over consecutive grid points inside the window.
    std::vector<double> diffs;
    for (std::size_t i = 1; i < ys.size(); ++i) {
        const double dt = (xs[i] - xs[i - 1]) * sqrt_n;
        diffs.push_back((ys[i] - ys[i - 1]) / dt);
    }
    const double mean = std::accumulate(diffs.begin(), diffs.end(), 0.0) / static_cast<double>(diffs.size());
    double var = 0;
    for (double d : diffs) var += (d - mean) * (d - mean);
    fit.sigma_eff = diffs.size() > 1 ? std::sqrt(var / static_cast<double>(diffs.size() - 1)) : 0.0;
    fit.a_eff = 1.0 / (mean * sqrt_n);
    fit.a_eff_err = std::sqrt(static_cast<double>(curve.N) / static_cast<double>(curve.M)) *
                    fit.sigma_eff * fit.a_eff * fit.a_eff;
    return fit;
}

double ks_statistic(std::vector<long long> a, std::vector<long long> b) {
    if (a.empty() || b.empty()) throw ContractError("KS statistic needs two nonempty samples");
    auto fix = [](std::vector<long long>& v) {
        for (auto& x : v)
            if (x < 0) x = std::numeric_limits<long long>::max();
        std::sort(v.begin(), v.end());
    };
    fix(a);
    fix(b);
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        const long long x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

double ks_critical(std::size_t n1, std::size_t n2, double alpha) {
    const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    return c * std::sqrt(static_cast<double>(n1 + n2) / (static_cast<double>(n1) * static_cast<double>(n2)));
}

RunReport RunReport::from_rows(std::vector<TrialResult> rows) {
    RunReport r;
    r.rows = std::move(rows);
    long long solved = 0;
    double runtime = 0;
    for (const auto& t : r.rows) {
        runtime += t.runtime_units;
        solved += t.succeeded;
        r.total_c1 += t.effective_calls;
        r.total_c2 += t.all_calls;
        r.total_errors += t.errors_detected;
    }
    if (!r.rows.empty()) {
        r.mean_runtime = runtime / static_cast<double>(r.rows.size());
        r.success_rate = static_cast<double>(solved) / static_cast<double>(r.rows.size());
    }
    return r;
}

}  // namespace gmin
