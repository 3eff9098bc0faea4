#include "gmin/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

#include "gmin/groups.hpp"

namespace gmin {

namespace {

using Index = std::uint64_t;

/// Calls f(idx) for every basis index whose bits at `fixed` (sorted
/// ascending) equal the corresponding bits of `set_mask`.
template <class F>
void for_each_fixed(int num_qubits, const std::vector<Qubit>& fixed, Index set_mask, F&& f) {
    const Index count = Index{1} << (num_qubits - static_cast<int>(fixed.size()));
    if (fixed.size() == 1) {
        const int p = fixed[0];
        const Index low = (Index{1} << p) - 1;
        for (Index i = 0; i < count; ++i) f((((i & ~low) << 1) | (i & low)) | set_mask);
        return;
    }
    if (fixed.size() == 2) {
        const Index l0 = (Index{1} << fixed[0]) - 1, l1 = (Index{1} << fixed[1]) - 1;
        for (Index i = 0; i < count; ++i) {
            Index idx = ((i & ~l0) << 1) | (i & l0);
            idx = ((idx & ~l1) << 1) | (idx & l1);
            f(idx | set_mask);
        }
        return;
    }
    std::vector<Index> lows;
    for (Qubit p : fixed) lows.push_back((Index{1} << p) - 1);
    for (Index i = 0; i < count; ++i) {
        Index idx = i;
        for (Index low : lows) idx = ((idx & ~low) << 1) | (idx & low);
        f(idx | set_mask);
    }
}

Index bit(Qubit q) { return Index{1} << q; }

std::vector<Qubit> sorted_unique(std::vector<Qubit> qs, int num_qubits) {
    std::sort(qs.begin(), qs.end());
    if (std::adjacent_find(qs.begin(), qs.end()) != qs.end())
        throw ContractError("gate repeats a qubit");
    if (!qs.empty() && (qs.front() < 0 || qs.back() >= num_qubits))
        throw ContractError("gate qubit outside the state");
    return qs;
}

}  // namespace

std::vector<Qubit> Register::qubits() const {
    std::vector<Qubit> qs(width);
    for (int i = 0; i < width; ++i) qs[i] = offset + i;
    return qs;
}

RegisterLayout::RegisterLayout(int m, int n, int ancilla, int capacity)
    : group_bits(m), position_bits(n), ancilla_bits(ancilla) {
    if (m < 1 || n < 1) throw ContractError("register widths must be positive");
    if (ancilla < 0 || ancilla > std::max(0, n - 2))
        throw ContractError("ancilla count must lie in [0, n-2]");
    if (total() > capacity)
        throw ContractError("layout needs " + std::to_string(total()) +
                            " qubits, simulator capacity is " + std::to_string(capacity));
}

std::uint64_t RegisterLayout::basis_index(std::uint64_t x, std::uint64_t v1, std::uint64_t v2,
                                          std::uint64_t anc) const {
    return (x & group().mask()) | ((v1 & position1().mask()) << position1().offset) |
           ((v2 & position2().mask()) << position2().offset) |
           ((anc & ancilla().mask()) << ancilla().offset);
}

QuantumState::QuantumState(int num_qubits)
    : num_qubits_(num_qubits),
      amps_(std::size_t{1} << num_qubits, cplx{0, 0}),
      last_action_(num_qubits, 0.0) {
    if (num_qubits < 1 || num_qubits > 30) throw ContractError("qubit count must be in [1, 30]");
    amps_[0] = 1.0;
}

void QuantumState::reset_basis(std::uint64_t index) {
    std::fill(amps_.begin(), amps_.end(), cplx{0, 0});
    amps_.at(index) = 1.0;
    std::fill(last_action_.begin(), last_action_.end(), now_);
}

void QuantumState::apply_matrix(Qubit q, const Mat2& m) {
    // Plain real arithmetic: std::complex products take a slow NaN-checking path.
    const Index tb = bit(q);
    const Index dim = amps_.size();
    auto* a = reinterpret_cast<double*>(amps_.data());
    const double m0r = m[0].real(), m0i = m[0].imag(), m1r = m[1].real(), m1i = m[1].imag();
    const double m2r = m[2].real(), m2i = m[2].imag(), m3r = m[3].real(), m3i = m[3].imag();
    for (Index base = 0; base < dim; base += 2 * tb)
        for (Index i = base; i < base + tb; ++i) {
            double* p0 = a + 2 * i;
            double* p1 = a + 2 * (i | tb);
            const double x0r = p0[0], x0i = p0[1], x1r = p1[0], x1i = p1[1];
            p0[0] = m0r * x0r - m0i * x0i + m1r * x1r - m1i * x1i;
            p0[1] = m0r * x0i + m0i * x0r + m1r * x1i + m1i * x1r;
            p1[0] = m2r * x0r - m2i * x0i + m3r * x1r - m3i * x1i;
            p1[1] = m2r * x0i + m2i * x0r + m3r * x1i + m3i * x1r;
        }
}

void QuantumState::apply(const Gate& g) {
    cplx* a = amps_.data();
    const int nq = num_qubits_;
    Index cmask = 0;
    for (Qubit c : g.controls) cmask |= bit(c);

    auto diagonal_phase = [&](cplx ph) {
        const Qubit t = g.targets.at(0);
        auto fixed = sorted_unique(g.support(), nq);
        for_each_fixed(nq, fixed, cmask | bit(t), [&](Index i) { a[i] *= ph; });
    };

    switch (g.kind) {
        case GateKind::X:
        case GateKind::CNOT:
        case GateKind::MCX: {
            const Qubit t = g.targets.at(0);
            const Index tb = bit(t);
            auto fixed = sorted_unique(g.support(), nq);
            for_each_fixed(nq, fixed, cmask, [&](Index i) { std::swap(a[i], a[i | tb]); });
            return;
        }
        case GateKind::H: {
            const Qubit t = g.targets.at(0);
            const Index tb = bit(t);
            const double r = std::numbers::sqrt2 / 2.0;
            auto fixed = sorted_unique(g.support(), nq);
            for_each_fixed(nq, fixed, cmask, [&](Index i) {
                const cplx x0 = a[i], x1 = a[i | tb];
                a[i] = r * (x0 + x1);
                a[i | tb] = r * (x0 - x1);
            });
            return;
        }
        case GateKind::Z:
        case GateKind::CZ:
        case GateKind::MCZ: diagonal_phase(-1.0); return;
        case GateKind::S: diagonal_phase(cplx{0, 1}); return;
        case GateKind::Sdg: diagonal_phase(cplx{0, -1}); return;
        case GateKind::T: diagonal_phase(std::polar(1.0, std::numbers::pi / 4)); return;
        case GateKind::Tdg: diagonal_phase(std::polar(1.0, -std::numbers::pi / 4)); return;
        case GateKind::Phase: diagonal_phase(std::polar(1.0, g.angle)); return;
        case GateKind::SWAP: {
            const Qubit p = g.targets.at(0), q = g.targets.at(1);
            auto fixed = sorted_unique(g.support(), nq);
            const Index flip = bit(p) | bit(q);
            for_each_fixed(nq, fixed, cmask | bit(p), [&](Index i) { std::swap(a[i], a[i ^ flip]); });
            return;
        }
    }
}

void QuantumState::apply(const CircuitBlock& block) {
    for (const auto& g : block.gates) apply(g);
}

double QuantumState::norm_squared() const {
    double s = 0.0;
    for (const auto& x : amps_) s += std::norm(x);
    return s;
}

std::vector<double> QuantumState::register_probabilities(const Register& reg) const {
    std::vector<double> probs(std::size_t{1} << reg.width, 0.0);
    const Index mask = reg.mask();
    for (Index i = 0; i < amps_.size(); ++i) probs[(i >> reg.offset) & mask] += std::norm(amps_[i]);
    return probs;
}

double QuantumState::project(const Register& reg, std::uint64_t outcome) {
    const Index mask = reg.mask();
    double p = 0.0;
    for (Index i = 0; i < amps_.size(); ++i) {
        if (((i >> reg.offset) & mask) == outcome)
            p += std::norm(amps_[i]);
        else
            amps_[i] = 0.0;
    }
    if (p <= 0.0) throw ContractError("projection onto an outcome of zero probability");
    const double scale = 1.0 / std::sqrt(p);
    for (auto& x : amps_) x *= scale;
    return p;
}

void QuantumState::dump(std::ostream& os, double threshold) const {
    const auto old = os.precision(17);
    for (Index i = 0; i < amps_.size(); ++i) {
        if (std::abs(amps_[i]) > threshold || (threshold == 0.0 && amps_[i] != cplx{0, 0}))
            os << i << ' ' << amps_[i].real() << ' ' << amps_[i].imag() << '\n';
    }
    os.precision(old);
}

void Engine::inject(QuantumState& state, Qubit q, double at, Rng& rng) const {
    const double elapsed = at - state.last_action(q);
    if (elapsed > 0.0) state.apply_matrix(q, sample_error_unitary(elapsed, *noise_, rng));
    state.mark_action(q, at);
}

void Engine::run(QuantumState& state, const CompiledBlock& block, Rng& rng) const {
    if (noise_) {
        run_native(state, block.native, block.native_schedule, rng);
        return;
    }
    state.apply(block.logical);
    state.advance(static_cast<double>(block.duration()));
}

void Engine::run_native(QuantumState& state, const CircuitBlock& block, const Schedule& sched,
                        Rng& rng) const {
    for (const auto& layer : sched.layers) {
        const double start = state.now();
        for (std::size_t gi : layer.gate_indices) {
            const Gate& g = block.gates[gi];
            if (!g.is_native())
                throw UndecomposedGateError("noisy execution met undecomposed " + to_string(g.kind));
            if (noise_)
                for (Qubit q : g.support()) inject(state, q, start, rng);
            state.apply(g);
        }
        state.advance(layer.duration);
    }
}

std::uint64_t Engine::measure(QuantumState& state, const Register& reg, Rng& rng) const {
    const double start = state.now();
    if (noise_)
        for (Qubit q : reg.qubits()) inject(state, q, start, rng);
    const auto probs = state.register_probabilities(reg);
    double total = 0.0;
    std::uint64_t outcome = 0;
    for (std::uint64_t k = 0; k < probs.size(); ++k) {
        total += probs[k];
        if (probs[k] > 0.0) outcome = k;  // fallback against round-off at the top end
    }
    double u = uniform01(rng) * total;
    for (std::uint64_t k = 0; k < probs.size(); ++k) {
        if (probs[k] > 0.0 && u < probs[k]) {
            outcome = k;
            break;
        }
        u -= probs[k];
    }
    state.project(reg, outcome);
    for (Qubit q : reg.qubits()) state.mark_action(q, start);
    state.advance(kMeasurementTime);
    return outcome;
}

void apply_gate(QuantumState& state, const Gate& g, const NoiseParams* noise, Rng* rng) {
    if (noise && !noise->is_noiseless()) {
        if (!g.is_native())
            throw UndecomposedGateError("noisy apply_gate met undecomposed " + to_string(g.kind));
        if (!rng) throw ContractError("noisy apply_gate needs an RNG");
        const double start = state.now();
        for (Qubit q : g.support()) {
            const double elapsed = start - state.last_action(q);
            if (elapsed > 0.0) state.apply_matrix(q, sample_error_unitary(elapsed, *noise, *rng));
            state.mark_action(q, start);
        }
        state.apply(g);
        state.advance(gate_duration(g));
        return;
    }
    state.apply(g);
    if (g.is_native()) {
        for (Qubit q : g.support()) state.mark_action(q, state.now());
        state.advance(gate_duration(g));
    }
}

std::uint64_t measure_register(QuantumState& state, const Register& reg, Rng& rng,
                               const NoiseParams* noise) {
    Engine engine(noise ? std::optional<NoiseParams>(*noise) : std::nullopt);
    return engine.measure(state, reg, rng);
}

}  // namespace gmin
