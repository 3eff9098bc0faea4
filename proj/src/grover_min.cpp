#include "gmin/grover_min.hpp"

#include <algorithm>
#include <cmath>

namespace gmin {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Ideal: return "ideal";
        case Strategy::SEM: return "sem";
        case Strategy::AEM: return "aem";
    }
    return "?";
}

Strategy strategy_from_string(const std::string& name) {
    if (name == "ideal") return Strategy::Ideal;
    if (name == "sem") return Strategy::SEM;
    if (name == "aem") return Strategy::AEM;
    throw ContractError("unknown strategy '" + name + "' (expected ideal, sem or aem)");
}

void GminConfig::validate() const {
    if (!(alpha > 0)) throw ContractError("alpha must be positive");
    if (!(beta >= 0 && beta <= 1)) throw ContractError("beta must lie in [0, 1]");
    if (!(gamma >= 1 && gamma < 4.0 / 3.0)) throw ContractError("gamma must lie in [1, 4/3)");
    if (!(ell > 0)) throw ContractError("ell must be positive");
}

long long GminConfig::budget(std::uint64_t search_size) const {
    const double a = run_until_solution ? kHardStopAlpha : alpha;
    return static_cast<long long>(std::ceil(a * std::sqrt(static_cast<double>(search_size))));
}

CircuitBlock build_oracle(const ProblemInstance& instance, const RegisterLayout& layout) {
    CircuitBlock b;
    b.name = "oracle";
    b.append(build_group_action(instance.group, layout));
    b.append(build_phcomp(layout.position1(), layout.position2(), layout.ancilla()));
    b.append(build_group_action(instance.group, layout, true));
    b.declared_support = b.touched();
    b.ancilla_used = layout.ancilla_bits;
    return b;
}

CircuitBlock build_grov(const ProblemInstance& instance, const RegisterLayout& layout) {
    CircuitBlock b = build_oracle(instance, layout);
    b.name = "grov";
    b.append(build_us(layout.group()));
    b.declared_support = b.touched();
    return b;
}

GminCircuits GminCircuits::build(const ProblemInstance& instance, int ancilla, int capacity) {
    GminCircuits c;
    c.instance = instance;
    c.layout = RegisterLayout(instance.group.group_bits, instance.group.position_bits, ancilla, capacity);
    const int nq = c.layout.total();
    c.prep = compile(build_hadamards(c.layout.group()), nq);
    c.grov = compile(build_grov(instance, c.layout), nq);
    return c;
}

long long sample_step_count(double t, Rng& rng) {
    const auto hi = static_cast<std::uint64_t>(std::max(1.0, std::ceil(t))) - 1;
    return static_cast<long long>(uniform_int(rng, 0, hi));
}

TrialResult run_gmin(const GminCircuits& circuits, Label v, const GminConfig& config,
                     const Engine& engine, Rng& rng, const TraceFn& trace) {
    config.validate();
    const auto& spec = circuits.instance.group;
    const auto& layout = circuits.layout;
    const std::uint64_t n_search = circuits.search_size();
    const double sqrt_n = std::sqrt(static_cast<double>(n_search));
    const long long budget = config.budget(n_search);

    TrialResult r;
    r.v = v;
    r.v_best = v;
    r.true_min = orbit_on_the_fly(circuits.instance, v).v_rep;
    QuantumState state(layout.total());
    auto mark_if_solved = [&] {
        if (r.calls_to_solution < 0 && r.v_best == r.true_min) {
            r.calls_to_solution = r.effective_calls;
            r.runtime_to_solution = state.now();
        }
    };
    mark_if_solved();

    double t = 1.0;
    long long iteration = 0;
    while (r.effective_calls < budget) {
        if (config.run_until_solution && r.calls_to_solution >= 0) break;
        IterationTrace tr;
        tr.iteration = iteration++;
        tr.t_before = t;
        const long long p = sample_step_count(t, rng);
        r.effective_calls += p + 1;
        state.reset_basis(layout.basis_index(0, v, r.v_best));
        engine.run(state, circuits.prep, rng);
        for (long long i = 0; i < p; ++i) engine.run(state, circuits.grov, rng);
        const GroupIndex x = engine.measure(state, layout.group(), rng);
        const Label f = group_apply(spec, x, v);
        if (f < r.v_best) {
            r.v_best = f;
            r.x_best = x;
            t = std::max(1.0, config.beta * t);
        } else {
            t = std::min(config.gamma * t, sqrt_n);
        }
        mark_if_solved();
        if (trace) {
            tr.p = p;
            tr.t_after = t;
            tr.x = x;
            tr.f = f;
            tr.v_best = r.v_best;
            tr.c1 = tr.c2 = r.effective_calls;
            trace(tr);
        }
    }
    r.all_calls = r.effective_calls;
    r.runtime_units = state.now();
    r.succeeded = r.v_best == r.true_min;
    return r;
}

long long oracle_budget(double a, double epsilon, std::uint64_t n) {
    if (!(a > 0) || !(epsilon > 0 && epsilon <= 1)) throw ContractError("need a > 0 and 0 < epsilon <= 1");
    const double alpha = a * std::sqrt(-std::log(epsilon));
    return static_cast<long long>(std::ceil(alpha * std::sqrt(static_cast<double>(n))));
}

double budget_bound_sum(std::uint64_t n) {
    if (n < 4) throw ContractError("budget bound needs N >= 4");
    const double nd = static_cast<double>(n);
    double sum = 0.0;
    for (std::uint64_t k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        sum += (1.0 / (kd + 1.0)) * 2.25 * nd / std::sqrt(kd * (nd - kd));
    }
    return sum;
}

}  // namespace gmin
