#include "gmin/gates.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gmin/noise.hpp"

namespace gmin {

namespace {

struct KindName {
    GateKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {GateKind::X, "X"},       {GateKind::H, "H"},       {GateKind::Z, "Z"},
    {GateKind::S, "S"},       {GateKind::Sdg, "SDG"},   {GateKind::T, "T"},
    {GateKind::Tdg, "TDG"},   {GateKind::Phase, "P"},   {GateKind::CNOT, "CNOT"},
    {GateKind::CZ, "CZ"},     {GateKind::SWAP, "SWAP"}, {GateKind::MCX, "MCX"},
    {GateKind::MCZ, "MCZ"},
};

void write_qubits(std::ostream& os, const std::vector<Qubit>& qs) {
    if (qs.empty()) {
        os << '-';
        return;
    }
    for (std::size_t i = 0; i < qs.size(); ++i) os << (i ? "," : "") << qs[i];
}

std::vector<Qubit> parse_qubits(const std::string& field) {
    std::vector<Qubit> qs;
    if (field == "-") return qs;
    std::stringstream ss(field);
    std::string item;
    while (std::getline(ss, item, ',')) qs.push_back(std::stoi(item));
    return qs;
}

}  // namespace

std::string to_string(GateKind kind) {
    for (const auto& kn : kKindNames)
        if (kn.kind == kind) return kn.name;
    return "?";
}

GateKind gate_kind_from_string(const std::string& name) {
    for (const auto& kn : kKindNames)
        if (name == kn.name) return kn.kind;
    throw std::invalid_argument("unknown gate kind '" + name + "'");
}

std::vector<Qubit> Gate::support() const {
    std::vector<Qubit> s = controls;
    s.insert(s.end(), targets.begin(), targets.end());
    return s;
}

bool Gate::is_native() const { return !is_multicontrolled() && arity() <= 2; }

Gate inverse(const Gate& g) {
    Gate inv = g;
    switch (g.kind) {
        case GateKind::S: inv.kind = GateKind::Sdg; break;
        case GateKind::Sdg: inv.kind = GateKind::S; break;
        case GateKind::T: inv.kind = GateKind::Tdg; break;
        case GateKind::Tdg: inv.kind = GateKind::T; break;
        case GateKind::Phase: inv.angle = -g.angle; break;
        default: break;
    }
    return inv;
}

void CircuitBlock::append(const CircuitBlock& other) {
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    declared_support.insert(declared_support.end(), other.declared_support.begin(),
                            other.declared_support.end());
    normalize_support();
    ancilla_used = std::max(ancilla_used, other.ancilla_used);
}

bool CircuitBlock::is_native() const {
    return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.is_native(); });
}

std::vector<Qubit> CircuitBlock::touched() const {
    std::vector<Qubit> qs;
    for (const auto& g : gates)
        for (Qubit q : g.support()) qs.push_back(q);
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    return qs;
}

void CircuitBlock::normalize_support() {
    std::sort(declared_support.begin(), declared_support.end());
    declared_support.erase(std::unique(declared_support.begin(), declared_support.end()),
                           declared_support.end());
}

CircuitBlock inverse(const CircuitBlock& block) {
    CircuitBlock inv;
    inv.name = block.name + "^-1";
    inv.declared_support = block.declared_support;
    inv.ancilla_used = block.ancilla_used;
    inv.gates.reserve(block.gates.size());
    for (auto it = block.gates.rbegin(); it != block.gates.rend(); ++it)
        inv.gates.push_back(inverse(*it));
    return inv;
}

void write_gate_list(std::ostream& os, const CircuitBlock& block) {
    os << "# " << (block.name.empty() ? "block" : block.name) << '\n';
    for (const auto& g : block.gates) {
        os << to_string(g.kind) << ' ';
        write_qubits(os, g.controls);
        os << ' ';
        write_qubits(os, g.targets);
        if (g.kind == GateKind::Phase) os << ' ' << std::setprecision(17) << g.angle;
        os << '\n';
    }
}

CircuitBlock read_gate_list(std::istream& is) {
    CircuitBlock block;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (block.name.empty() && line.size() > 2) block.name = line.substr(2);
            continue;
        }
        std::istringstream ls(line);
        std::string kind, controls, targets;
        ls >> kind >> controls >> targets;
        Gate g;
        g.kind = gate_kind_from_string(kind);
        g.controls = parse_qubits(controls);
        g.targets = parse_qubits(targets);
        if (g.kind == GateKind::Phase) ls >> g.angle;
        block.gates.push_back(std::move(g));
    }
    block.declared_support = block.touched();
    return block;
}

Schedule schedule(const CircuitBlock& block) {
    Schedule out;
    std::vector<Qubit> open_support;
    Layer open;
    auto close = [&] {
        if (open.gate_indices.empty()) return;
        out.total_duration += open.duration;
        out.layers.push_back(std::move(open));
        open = Layer{};
        open_support.clear();
    };
    for (std::size_t i = 0; i < block.gates.size(); ++i) {
        const Gate& g = block.gates[i];
        const int d = gate_duration(g);
        const auto sup = g.support();
        const bool clash = std::any_of(sup.begin(), sup.end(), [&](Qubit q) {
            return std::find(open_support.begin(), open_support.end(), q) != open_support.end();
        });
        if (clash) close();
        open.gate_indices.push_back(i);
        open.duration = std::max(open.duration, d);
        open_support.insert(open_support.end(), sup.begin(), sup.end());
    }
    close();
    return out;
}

GateCostReport cost_report(const CircuitBlock& block) {
    GateCostReport r;
    for (const auto& g : block.gates) {
        if (!g.is_native())
            throw std::invalid_argument("cost_report needs a decomposed block");
        if (g.arity() == 1)
            ++r.one_qubit_count;
        else
            ++r.two_qubit_count;
    }
    r.scheduled_duration = schedule(block).total_duration;
    return r;
}

}  // namespace gmin
