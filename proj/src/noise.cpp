#include "gmin/noise.hpp"

#include <cmath>
#include <string>

namespace gmin {

namespace {

double inv(double t) { return std::isinf(t) ? 0.0 : 1.0 / t; }

}  // namespace

double derive_tphi(double t1, double t2) {
    if (!(t1 > 0.0) || !(t2 > 0.0)) throw NoiseParamError("T1 and T2 must be positive");
    const double rate = inv(t2) - 0.5 * inv(t1);
    // Relative slack so t2 == 2 t1 computed in floating point counts as the boundary.
    if (rate < -1e-15 * (inv(t2) + inv(t1)))
        throw NoiseParamError("T2 = " + std::to_string(t2) + " exceeds 2 T1 = " +
                              std::to_string(2.0 * t1) + " (negative dephasing rate)");
    if (rate <= 0.0) return kInfiniteTime;
    return 1.0 / rate;
}

NoiseParams NoiseParams::from_t1_t2(double t1, double t2) {
    NoiseParams p;
    p.t1 = t1;
    p.t2 = t2;
    p.tphi = derive_tphi(t1, t2);
    return p;
}

bool NoiseParams::is_noiseless() const {
    return std::isinf(t1) && std::isinf(t2) && std::isinf(tphi);
}

ErrorSample sample_error(double elapsed, const NoiseParams& params, Rng& rng) {
    auto stddev = [&](double t) { return std::sqrt(elapsed * 0.5 * inv(t)); };
    ErrorSample s;
    s.vx = normal(rng, stddev(params.t1));
    s.vy = normal(rng, stddev(params.tphi));
    s.vz = normal(rng, stddev(params.t2));
    return s;
}

Mat2 error_unitary(const ErrorSample& s) {
    // exp(i r n.sigma) = cos r I + i sin r (n.sigma), r = |v|.
    const double r = std::sqrt(s.vx * s.vx + s.vy * s.vy + s.vz * s.vz);
    if (r == 0.0) return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};
    const double c = std::cos(r);
    const double k = std::sin(r) / r;
    const cplx i{0, 1};
    // n.sigma = [[vz, vx - i vy], [vx + i vy, -vz]]
    return {cplx{c, 0} + i * k * s.vz, i * k * cplx{s.vx, -s.vy},
            i * k * cplx{s.vx, s.vy}, cplx{c, 0} - i * k * s.vz};
}

int gate_duration(const Gate& g) {
    if (!g.is_native())
        throw std::invalid_argument(to_string(g.kind) + " on " + std::to_string(g.arity()) +
                                    " qubits has no duration; decompose it first");
    return g.arity() == 1 ? kSingleQubitGateTime : kTwoQubitGateTime;
}

}  // namespace gmin
