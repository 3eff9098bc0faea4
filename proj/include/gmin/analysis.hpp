#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gmin/grover_min.hpp"

namespace gmin {

/// Thrown when a curve has too few points inside the fit window.
class FitDomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kFitWindowLow = 0.2;
inline constexpr double kFitWindowHigh = 0.995;

/// Empirical P(calls_to_solution <= T) on the integer grid T = 0..T_max.
struct SuccessCurve {
    std::vector<long long> T;
    std::vector<double> P;
    long long M = 0;        ///< trials
    std::uint64_t N = 0;    ///< search size
};

SuccessCurve estimate_success_curve(const std::vector<long long>& calls_to_solution, std::uint64_t n);
SuccessCurve estimate_success_curve(const std::vector<TrialResult>& trials, std::uint64_t n);

struct RateFit {
    double a = 0.0;
    double a_err = 0.0;      ///< standard error of the regression slope, mapped to a
    double r2 = 0.0;
    double a_eff = 0.0;
    double a_eff_err = 0.0;
    double sigma_eff = 0.0;
    int points = 0;          ///< curve points inside the window
    double window_low = kFitWindowLow;
    double window_high = kFitWindowHigh;
};

/// Fits sqrt(-ln(1-P)) = (T / sqrt(N)) / a through the origin over the points
/// with P in [0.2, 0.995]. The effective rate parameter comes from the mean
/// of successive differences of sqrt(-ln(1-P)), 1/(a_eff sqrt(N)), with
/// a_eff_err = sqrt(N/M) sigma_eff a_eff^2.
RateFit fit_rate_parameter(const SuccessCurve& curve);

/// Two-sample Kolmogorov-Smirnov statistic. Values of -1 (never solved) are
/// treated as +infinity.
double ks_statistic(std::vector<long long> a, std::vector<long long> b);

/// Critical value of the two-sample KS statistic at significance `alpha`.
double ks_critical(std::size_t n1, std::size_t n2, double alpha = 0.01);

struct RunReport {
    std::vector<TrialResult> rows;
    double mean_runtime = 0.0;  ///< mean of runtime_units, no error bar
    double success_rate = 0.0;
    long long total_c1 = 0;
    long long total_c2 = 0;
    long long total_errors = 0;

    static RunReport from_rows(std::vector<TrialResult> rows);
};

}  // namespace gmin
