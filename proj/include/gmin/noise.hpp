#pragma once

#include <array>
#include <complex>
#include <limits>

#include "gmin/gates.hpp"
#include "gmin/rng.hpp"

namespace gmin {

using cplx = std::complex<double>;
/// Row-major 2x2 matrix.
using Mat2 = std::array<cplx, 4>;

inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

/// Durations in single-qubit gate times (SQGT).
inline constexpr int kSingleQubitGateTime = 1;
inline constexpr int kTwoQubitGateTime = 2;
inline constexpr int kMeasurementTime = 10;

/// Rejected time constants (t2 > 2 t1, non-positive values).
class NoiseParamError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// 1/tphi = 1/t2 - 1/(2 t1); infinite inputs are allowed.
double derive_tphi(double t1, double t2);

/// Pauli-twirl single-qubit noise parameters, all times in SQGT.
struct NoiseParams {
    double t1 = kInfiniteTime;
    double t2 = kInfiniteTime;
    double tphi = kInfiniteTime;

    /// Validates and derives tphi.
    static NoiseParams from_t1_t2(double t1, double t2);
    bool is_noiseless() const;
};

struct ErrorSample {
    double vx = 0.0;
    double vy = 0.0;
    double vz = 0.0;
};

/// vx ~ N(0, elapsed/(2 t1)), vy ~ N(0, elapsed/(2 tphi)), vz ~ N(0, elapsed/(2 t2)),
/// where the second argument is the variance. Three normal draws per call,
/// even for an infinite axis, so stream consumption does not depend on T.
ErrorSample sample_error(double elapsed, const NoiseParams& params, Rng& rng);

/// exp(i (vx X + vy Y + vz Z)) in closed form.
Mat2 error_unitary(const ErrorSample& s);

inline Mat2 sample_error_unitary(double elapsed, const NoiseParams& params, Rng& rng) {
    return error_unitary(sample_error(elapsed, params, rng));
}

/// Duration of a native gate; throws for undecomposed multi-controlled gates.
int gate_duration(const Gate& g);

}  // namespace gmin
