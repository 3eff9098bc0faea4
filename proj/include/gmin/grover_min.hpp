#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "gmin/circuits.hpp"
#include "gmin/groups.hpp"
#include "gmin/rng.hpp"
#include "gmin/statevector.hpp"

namespace gmin {

enum class Strategy { Ideal, SEM, AEM };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

/// Hard-stop budget coefficient used when running until the solution is found.
inline constexpr double kHardStopAlpha = 45.0 / 2.0;

struct GminConfig {
    double alpha = 5.7;
    double beta = 0.95;
    double gamma = 1.15;
    Strategy strategy = Strategy::Ideal;
    double ell = 1.0;  ///< AEM: stop once c2 >= ell * N
    bool run_until_solution = false;
    std::uint64_t master_seed = 1;

    /// Throws ContractError on out-of-range parameters. gamma = 1 is accepted
    /// as the degenerate no-ramp limit.
    void validate() const;
    /// Effective-call cap: ceil(alpha sqrt(N)), or ceil(45/2 sqrt(N)) when
    /// running until the solution is found.
    long long budget(std::uint64_t search_size) const;
};

struct TrialResult {
    std::uint64_t trial_id = 0;
    std::uint64_t seed = 0;
    Label v = 0;
    Label v_best = 0;
    GroupIndex x_best = 0;
    Label true_min = 0;
    long long calls_to_solution = -1;  ///< effective calls when the minimum was first held; -1 if never
    long long effective_calls = 0;     ///< c (c1 under AEM)
    long long all_calls = 0;           ///< c2 under AEM, equal to c otherwise
    long long errors_detected = 0;
    double runtime_units = 0.0;        ///< quantum time over the whole trial
    double runtime_to_solution = -1.0; ///< quantum time when the minimum was first held
    bool succeeded = false;
};

/// One pass through the main loop, reported to an optional observer.
struct IterationTrace {
    long long iteration = 0;
    long long p = 0;
    double t_before = 0.0;
    double t_after = 0.0;
    GroupIndex x = 0;
    Label f = 0;
    Label v_best = 0;
    long long c1 = 0;
    long long c2 = 0;
    bool good = true;
    int error_step = 0;  ///< inner Grov step at which an error was detected (AEM)
};

using TraceFn = std::function<void(const IterationTrace&)>;

/// Oracle: G on (group, position1), PhComp(position1, position2), G^-1.
/// Flips the sign of |x>|v>|w> iff g(x) v < w.
CircuitBlock build_oracle(const ProblemInstance& instance, const RegisterLayout& layout);

/// Oracle followed by U_s on the group register.
CircuitBlock build_grov(const ProblemInstance& instance, const RegisterLayout& layout);

/// Everything a trial needs, compiled once and shared read-only between trials.
struct GminCircuits {
    ProblemInstance instance;
    RegisterLayout layout;
    CompiledBlock prep;  ///< V = H on the group register
    CompiledBlock grov;

    static GminCircuits build(const ProblemInstance& instance, int ancilla = 0,
                              int capacity = RegisterLayout::kDefaultCapacity);
    std::uint64_t search_size() const { return instance.group.index_count(); }
};

/// Uniform integer in [0, ceil(t) - 1].
long long sample_step_count(double t, Rng& rng);

/// The minimization loop on the given engine (ideal, or noisy for static mitigation).
TrialResult run_gmin(const GminCircuits& circuits, Label v, const GminConfig& config,
                     const Engine& engine, Rng& rng, const TraceFn& trace = {});

/// ceil(a sqrt(-ln eps) sqrt(N)).
long long oracle_budget(double a, double epsilon, std::uint64_t n);

/// sum_{k=1}^{N-1} 1/(k+1) (9/4) N / sqrt(k (N - k)).
double budget_bound_sum(std::uint64_t n);

}  // namespace gmin
