#include "gmin/aem.hpp"

#include <algorithm>
#include <cmath>

#include "gmin/classical_mc.hpp"

namespace gmin {

TrialResult run_gmin_aem(const GminCircuits& circuits, Label v, const GminConfig& config,
                         const Engine& engine, Rng& rng, const TraceFn& trace,
                         const ForcedErrorFn& force_error) {
    config.validate();
    const auto& spec = circuits.instance.group;
    const auto& layout = circuits.layout;
    const std::uint64_t n_search = circuits.search_size();
    const double sqrt_n = std::sqrt(static_cast<double>(n_search));
    const long long budget = config.budget(n_search);
    const double hard_stop = config.ell * static_cast<double>(n_search);
    const Register check = layout.check_block();
    const int n = layout.position_bits;
    const std::uint64_t pos_mask = layout.position1().mask();

    TrialResult r;
    r.v = v;
    r.v_best = v;
    r.true_min = orbit_on_the_fly(circuits.instance, v).v_rep;
    QuantumState state(layout.total());
    long long& c1 = r.effective_calls;
    long long& c2 = r.all_calls;
    auto mark_if_solved = [&] {
        if (r.calls_to_solution < 0 && r.v_best == r.true_min) {
            r.calls_to_solution = c1;
            r.runtime_to_solution = state.now();
        }
    };
    mark_if_solved();

    double t = 1.0;
    bool good = true;
    long long p = 0;
    long long iteration = 0;
    while (c1 < budget && static_cast<double>(c2) < hard_stop) {
        if (config.run_until_solution && r.calls_to_solution >= 0) break;
        IterationTrace tr;
        tr.iteration = iteration;
        tr.t_before = t;
        if (good)
            p = sample_step_count(t, rng);
        else
            good = true;
        state.reset_basis(layout.basis_index(0, v, r.v_best));
        engine.run(state, circuits.prep, rng);
        for (long long i = 1; i <= p; ++i) {
            engine.run(state, circuits.grov, rng);
            const std::uint64_t out = engine.measure(state, check, rng);
            const Label v1 = out & pos_mask;
            const Label v2 = (out >> n) & pos_mask;
            const std::uint64_t anc = out >> (2 * n);
            const bool forced = force_error && force_error(iteration, i);
            if (v1 != v || v2 != r.v_best || anc != 0 || forced) {
                good = false;
                c2 += i + 1;
                ++r.errors_detected;
                tr.error_step = static_cast<int>(i);
                break;
            }
        }
        const GroupIndex x = engine.measure(state, layout.group(), rng);
        if (good) {
            c1 += p + 1;
            c2 += p + 1;
        }
        const Label f = group_apply(spec, x, v);
        if (f < r.v_best) {
            r.v_best = f;
            r.x_best = x;
            t = std::max(1.0, config.beta * t);
        } else if (good) {
            t = std::min(config.gamma * t, sqrt_n);
        }
        mark_if_solved();
        if (trace) {
            tr.p = p;
            tr.t_after = t;
            tr.x = x;
            tr.f = f;
            tr.v_best = r.v_best;
            tr.c1 = c1;
            tr.c2 = c2;
            tr.good = good;
            trace(tr);
        }
        ++iteration;
    }
    r.runtime_units = state.now();
    r.succeeded = r.v_best == r.true_min;
    return r;
}

AemAnalyticParams AemAnalyticParams::from_delta(double delta, double e, long long p, std::uint64_t k,
                                                std::uint64_t n) {
    if (!(delta > 0) || n == 0 || k > n) throw ContractError("need delta > 0 and 0 <= k <= N");
    AemAnalyticParams a;
    a.delta = delta;
    a.e = e;
    a.p = p;
    a.sigma = std::exp(-4.0 / (delta * std::sqrt(static_cast<double>(n))));
    a.theta = std::asin(std::sqrt(static_cast<double>(k) / static_cast<double>(n)));
    return a;
}

double aem_success_predict(const AemAnalyticParams& a) {
    if (!(a.delta > 0) || a.e < 0 || a.e > 1 || a.sigma < 0 || a.sigma > 1 || a.p < 0)
        throw ContractError("AEM predictor parameters out of range");
    const double d2 = a.delta * a.delta;
    const double sp = std::pow(a.sigma, static_cast<double>(a.p));
    const double s = std::sin((2.0 * static_cast<double>(a.p) + 1.0) * a.theta);
    return (1.0 - a.e / (1.0 + d2)) * sp * s * s + (a.e * d2 / (1.0 + d2)) * (1.0 - sp) / 2.0;
}

ChannelEstimate simulate_abstract_channel(double sigma, double e, long long p, std::uint64_t k,
                                          std::uint64_t n, long long trials, Rng& rng) {
    if (sigma < 0 || sigma > 1 || e < 0 || e > 1 || p < 0 || k > n || n == 0 || trials <= 0)
        throw ContractError("abstract channel parameters out of range");
    long long hits = 0;
    for (long long trial = 0; trial < trials; ++trial) {
        double success = -1.0;
        for (long long i = 0; i < p && success < 0; ++i) {
            if (uniform01(rng) < sigma) continue;
            if (uniform01(rng) < e)
                success = grover_success_prob(k, n, i);  // i clean calls so far
            else
                success = static_cast<double>(k) / static_cast<double>(n);
        }
        if (success < 0) success = grover_success_prob(k, n, p);
        hits += uniform01(rng) < success;
    }
    ChannelEstimate est;
    est.trials = trials;
    est.probability = static_cast<double>(hits) / static_cast<double>(trials);
    est.std_error = std::sqrt(est.probability * (1 - est.probability) / static_cast<double>(trials));
    return est;
}

}  // namespace gmin
