#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gmin {

using Qubit = int;

enum class GateKind {
    X,
    H,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Phase,  ///< diag(1, e^{i angle})
    CNOT,
    CZ,
    SWAP,
    MCX,  ///< X on targets[0] when every control is |1>
    MCZ,  ///< -1 when every control and the target are |1>
};

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& name);

struct Gate {
    GateKind kind = GateKind::X;
    std::vector<Qubit> controls;
    std::vector<Qubit> targets;
    double angle = 0.0;

    static Gate x(Qubit q) { return {GateKind::X, {}, {q}}; }
    static Gate h(Qubit q) { return {GateKind::H, {}, {q}}; }
    static Gate z(Qubit q) { return {GateKind::Z, {}, {q}}; }
    static Gate s(Qubit q) { return {GateKind::S, {}, {q}}; }
    static Gate sdg(Qubit q) { return {GateKind::Sdg, {}, {q}}; }
    static Gate t(Qubit q) { return {GateKind::T, {}, {q}}; }
    static Gate tdg(Qubit q) { return {GateKind::Tdg, {}, {q}}; }
    static Gate phase(Qubit q, double angle) { return {GateKind::Phase, {}, {q}, angle}; }
    static Gate cnot(Qubit c, Qubit t) { return {GateKind::CNOT, {c}, {t}}; }
    static Gate cz(Qubit a, Qubit b) { return {GateKind::CZ, {a}, {b}}; }
    static Gate swap(Qubit a, Qubit b) { return {GateKind::SWAP, {}, {a, b}}; }
    static Gate mcx(std::vector<Qubit> controls, Qubit t) {
        return {GateKind::MCX, std::move(controls), {t}};
    }
    static Gate mcz(std::vector<Qubit> controls, Qubit t) {
        return {GateKind::MCZ, std::move(controls), {t}};
    }

    /// Every qubit the gate touches (controls first).
    std::vector<Qubit> support() const;
    int arity() const { return static_cast<int>(controls.size() + targets.size()); }
    /// True for MCX/MCZ, regardless of control count.
    bool is_multicontrolled() const { return kind == GateKind::MCX || kind == GateKind::MCZ; }
    /// True when the gate acts on one or two qubits and carries a duration.
    bool is_native() const;

    bool operator==(const Gate&) const = default;
};

/// Gate inverse; every kind except S/T/Phase is self-inverse.
Gate inverse(const Gate& g);

struct CircuitBlock {
    std::string name;
    std::vector<Gate> gates;
    std::vector<Qubit> declared_support;  ///< sorted
    int ancilla_used = 0;

    void append(const Gate& g) { gates.push_back(g); }
    void append(const CircuitBlock& other);
    bool is_native() const;
    /// Qubits touched by the gates, sorted.
    std::vector<Qubit> touched() const;
    /// Sorts and deduplicates declared_support after it was filled in.
    void normalize_support();
};

CircuitBlock inverse(const CircuitBlock& block);

/// Plain-text gate list, one gate per line: `kind controls targets [angle]`,
/// qubit lists comma separated, `-` for an empty list.
void write_gate_list(std::ostream& os, const CircuitBlock& block);
CircuitBlock read_gate_list(std::istream& is);

struct Layer {
    std::vector<std::size_t> gate_indices;
    int duration = 0;
};

struct Schedule {
    std::vector<Layer> layers;
    long long total_duration = 0;
};

/// Greedy left-to-right layering: a gate joins the open layer when its
/// support is disjoint from every gate already in it, otherwise it opens a
/// new layer. Layer duration is the longest gate in it.
Schedule schedule(const CircuitBlock& block);

struct GateCostReport {
    long long one_qubit_count = 0;
    long long two_qubit_count = 0;
    long long scheduled_duration = 0;
};

GateCostReport cost_report(const CircuitBlock& block);

}  // namespace gmin
