#include "gmin/decompose.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace gmin {

namespace {

using Gates = std::vector<Gate>;

void emit_ccz(Gates& out, Qubit a, Qubit b, Qubit t) {
    out.push_back(Gate::cnot(b, t));
    out.push_back(Gate::tdg(t));
    out.push_back(Gate::cnot(a, t));
    out.push_back(Gate::t(t));
    out.push_back(Gate::cnot(b, t));
    out.push_back(Gate::tdg(t));
    out.push_back(Gate::cnot(a, t));
    out.push_back(Gate::t(b));
    out.push_back(Gate::t(t));
    out.push_back(Gate::cnot(a, b));
    out.push_back(Gate::t(a));
    out.push_back(Gate::tdg(b));
    out.push_back(Gate::cnot(a, b));
}

void emit_toffoli(Gates& out, Qubit a, Qubit b, Qubit t) {
    out.push_back(Gate::h(t));
    emit_ccz(out, a, b, t);
    out.push_back(Gate::h(t));
}

/// Phase polynomial for a Z-phase on the all-ones state of `qs`:
/// x1...xq = 2^{1-q} sum_{S != {}} (-1)^{|S|-1} parity_S(x).
void emit_mcz_phase_polynomial(Gates& out, const std::vector<Qubit>& qs) {
    const int q = static_cast<int>(qs.size());
    const double unit = std::numbers::pi / static_cast<double>(1ULL << (q - 1));
    for (unsigned long long subset = 1; subset < (1ULL << q); ++subset) {
        int top = -1;
        int size = 0;
        for (int i = 0; i < q; ++i)
            if (subset >> i & 1) {
                top = i;
                ++size;
            }
        std::vector<Gate> ladder;
        for (int i = 0; i < top; ++i)
            if (subset >> i & 1) ladder.push_back(Gate::cnot(qs[i], qs[top]));
        out.insert(out.end(), ladder.begin(), ladder.end());
        out.push_back(Gate::phase(qs[top], (size % 2 == 1 ? 1.0 : -1.0) * unit));
        out.insert(out.end(), ladder.rbegin(), ladder.rend());
    }
}

/// Toffoli chain with clean ancilla: compute, flip target, uncompute.
void emit_mcx_clean_chain(Gates& out, const std::vector<Qubit>& c, Qubit t,
                          const std::vector<Qubit>& anc) {
    const std::size_t k = c.size();
    Gates compute;
    emit_toffoli(compute, c[0], c[1], anc[0]);
    for (std::size_t j = 1; j + 2 < k; ++j) emit_toffoli(compute, anc[j - 1], c[j + 1], anc[j]);
    out.insert(out.end(), compute.begin(), compute.end());
    emit_toffoli(out, anc[k - 3], c[k - 1], t);
    // Every gate in `compute` is self-inverse or paired with its inverse in
    // reverse order, so the reversed inverse sequence uncomputes it.
    for (auto it = compute.rbegin(); it != compute.rend(); ++it) out.push_back(inverse(*it));
}

/// Barenco et al. Lemma 7.2: k >= 3 controls, k-2 ancilla in any state.
void emit_mcx_lemma72(Gates& out, const std::vector<Qubit>& c, Qubit t,
                      const std::vector<Qubit>& anc) {
    const int k = static_cast<int>(c.size());
    auto ladder_down = [&] {
        for (int j = k - 3; j >= 1; --j) emit_toffoli(out, c[j + 1], anc[j - 1], anc[j]);
    };
    auto ladder_up = [&] {
        for (int j = 1; j <= k - 3; ++j) emit_toffoli(out, c[j + 1], anc[j - 1], anc[j]);
    };
    emit_toffoli(out, c[k - 1], anc[k - 3], t);
    ladder_down();
    emit_toffoli(out, c[0], c[1], anc[0]);
    ladder_up();
    emit_toffoli(out, c[k - 1], anc[k - 3], t);
    ladder_down();
    emit_toffoli(out, c[0], c[1], anc[0]);
    ladder_up();
}

void emit_mcx(Gates& out, const std::vector<Qubit>& c, Qubit t,
              const std::vector<Qubit>& clean, const std::vector<Qubit>& dirty);

/// Lemma 7.3: one spare qubit `b`; the two halves borrow each other.
void emit_mcx_split(Gates& out, const std::vector<Qubit>& c, Qubit t, Qubit b) {
    const std::size_t k = c.size();
    const std::size_t m1 = (k + 1) / 2;
    std::vector<Qubit> first(c.begin(), c.begin() + static_cast<long>(m1));
    std::vector<Qubit> second(c.begin() + static_cast<long>(m1), c.end());
    std::vector<Qubit> borrow_first = second;
    borrow_first.push_back(t);
    std::vector<Qubit> second_controls = second;
    second_controls.push_back(b);
    for (int rep = 0; rep < 2; ++rep) {
        emit_mcx(out, second_controls, t, {}, first);
        emit_mcx(out, first, b, {}, borrow_first);
    }
}

void emit_mcx(Gates& out, const std::vector<Qubit>& c, Qubit t,
              const std::vector<Qubit>& clean, const std::vector<Qubit>& dirty) {
    const std::size_t k = c.size();
    if (k == 0) {
        out.push_back(Gate::x(t));
        return;
    }
    if (k == 1) {
        out.push_back(Gate::cnot(c[0], t));
        return;
    }
    if (k == 2) {
        emit_toffoli(out, c[0], c[1], t);
        return;
    }
    if (clean.size() >= k - 2) {
        emit_mcx_clean_chain(out, c, t, clean);
        return;
    }
    std::vector<Qubit> spare = clean;
    spare.insert(spare.end(), dirty.begin(), dirty.end());
    if (spare.size() >= k - 2) {
        emit_mcx_lemma72(out, c, t, spare);
        return;
    }
    if (!spare.empty() && k >= 4) {
        emit_mcx_split(out, c, t, spare[0]);
        return;
    }
    out.push_back(Gate::h(t));
    std::vector<Qubit> all = c;
    all.push_back(t);
    emit_mcz_phase_polynomial(out, all);
    out.push_back(Gate::h(t));
}

}  // namespace

std::vector<Gate> decompose_multicontrolled(const Gate& gate, const std::vector<Qubit>& clean_ancilla,
                                            const std::vector<Qubit>& borrowable) {
    Gates out;
    const auto& c = gate.controls;
    switch (gate.kind) {
        case GateKind::MCX:
        case GateKind::CNOT:
        case GateKind::X:
            emit_mcx(out, c, gate.targets.at(0), clean_ancilla, borrowable);
            return out;
        case GateKind::MCZ:
        case GateKind::CZ:
        case GateKind::Z: {
            const Qubit t = gate.targets.at(0);
            if (c.empty()) {
                out.push_back(Gate::z(t));
            } else if (c.size() == 1) {
                out.push_back(Gate::cz(c[0], t));
            } else if (c.size() == 2) {
                emit_ccz(out, c[0], c[1], t);
            } else {
                out.push_back(Gate::h(t));
                emit_mcx(out, c, t, clean_ancilla, borrowable);
                out.push_back(Gate::h(t));
            }
            return out;
        }
        default:
            if (gate.is_native()) return {gate};
            throw std::invalid_argument("no decomposition for " + to_string(gate.kind));
    }
}

CircuitBlock decompose_block(const CircuitBlock& block, int num_qubits) {
    CircuitBlock out;
    out.name = block.name;
    out.declared_support = block.declared_support;
    out.ancilla_used = block.ancilla_used;
    for (const auto& g : block.gates) {
        if (g.is_native()) {
            out.gates.push_back(g);
            continue;
        }
        const auto sup = g.support();
        std::vector<Qubit> borrow;
        for (Qubit q = 0; q < num_qubits; ++q)
            if (std::find(sup.begin(), sup.end(), q) == sup.end()) borrow.push_back(q);
        auto gates = decompose_multicontrolled(g, {}, borrow);
        for (const auto& d : gates)
            for (Qubit q : d.support())
                if (std::find(out.declared_support.begin(), out.declared_support.end(), q) ==
                    out.declared_support.end())
                    out.declared_support.push_back(q);
        out.gates.insert(out.gates.end(), gates.begin(), gates.end());
    }
    out.normalize_support();
    return out;
}

}  // namespace gmin
