#pragma once

#include <cstdint>
#include <vector>

#include "gmin/analysis.hpp"
#include "gmin/grover_min.hpp"
#include "gmin/rng.hpp"

namespace gmin {

/// sin^2((2p+1) theta) with sin^2(theta) = k/N.
double grover_success_prob(std::uint64_t k, std::uint64_t n, long long p);

/// Classical control flow of the minimization loop for AddModN with the quantum search
/// replaced by its exact outcome law: marked (value uniform on [0, w)) with
/// probability sin^2((2p+1) theta), otherwise a value uniform on [w, N).
/// The start value v is drawn uniformly from [0, N).
TrialResult run_gmin_mc(std::uint64_t n, const GminConfig& config, Rng& rng);

/// Runs `trials` independent MC trials, trial i on stream (seed, i).
std::vector<TrialResult> run_gmin_mc_batch(std::uint64_t n, const GminConfig& config, long long trials,
                                           std::uint64_t seed);

struct SurveyRow {
    double beta = 0.0;
    double gamma = 0.0;
    std::uint64_t N = 0;
    long long trials = 0;
    RateFit fit;
};

/// Rate parameter over a beta x gamma grid (run until solution); a failed fit
/// leaves NaN in that row. Grid point
/// (i, j) uses master seed stream_seed(seed, i * |gamma_grid| + j).
std::vector<SurveyRow> survey_beta_gamma(const std::vector<double>& beta_grid,
                                         const std::vector<double>& gamma_grid, std::uint64_t n,
                                         long long trials, std::uint64_t seed, int workers = 1);

}  // namespace gmin
