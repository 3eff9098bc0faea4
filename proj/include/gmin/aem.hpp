#pragma once

#include <cstdint>
#include <functional>

#include "gmin/grover_min.hpp"

namespace gmin {

/// Test hook: return true to treat inner Grov step `step` (1-based) of main
/// loop pass `iteration` as a detected error, whatever the measurement says.
using ForcedErrorFn = std::function<bool(long long iteration, long long step)>;

/// Minimization with active error mitigation: after every Grov call the position registers and the ancilla
/// are measured (one combined measurement event); a mismatch with (v, v_best)
/// or a nonzero ancilla aborts the remaining steps, charges i + 1 calls to c2
/// only, and keeps p for the retry. The group register is measured and
/// checked on every pass.
TrialResult run_gmin_aem(const GminCircuits& circuits, Label v, const GminConfig& config,
                         const Engine& engine, Rng& rng, const TraceFn& trace = {},
                         const ForcedErrorFn& force_error = {});

struct AemAnalyticParams {
    double delta = 1.0;  ///< coherence coefficient
    double e = 1.0;      ///< fraction of errors that only touch the position registers
    double sigma = 1.0;  ///< probability that one Grov call is error free
    double theta = 0.0;  ///< Grover angle, sin^2(theta) = k / N
    long long p = 0;     ///< Grov calls

    /// sigma = exp(-4 / (delta sqrt(N))), theta from k of N.
    static AemAnalyticParams from_delta(double delta, double e, long long p, std::uint64_t k,
                                        std::uint64_t n);
};

/// (1 - e/(1+delta^2)) sigma^p sin^2((2p+1) theta) + e delta^2/(1+delta^2) (1 - sigma^p)/2.
double aem_success_predict(const AemAnalyticParams& params);

struct ChannelEstimate {
    double probability = 0.0;
    double std_error = 0.0;
    long long trials = 0;
};

/// Monte-Carlo over the abstract noisy-Grov channel: each call is clean with
/// probability sigma; otherwise, with probability e, the error only corrupts
/// the position registers, is detected, and the group register is measured in
/// its state after the clean calls so far; else the system is maximally mixed
/// and the group outcome is uniform on [0, N).
ChannelEstimate simulate_abstract_channel(double sigma, double e, long long p, std::uint64_t k,
                                          std::uint64_t n, long long trials, Rng& rng);

}  // namespace gmin
