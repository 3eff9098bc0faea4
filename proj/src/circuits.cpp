#include "gmin/circuits.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "gmin/decompose.hpp"

namespace gmin {

namespace {

std::vector<Qubit> concat(std::vector<Qubit> a, const std::vector<Qubit>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// Toffoli when two controls, CNOT when one, plain MCX otherwise.
Gate mcx(std::vector<Qubit> controls, Qubit t) {
    if (controls.size() == 1) return Gate::cnot(controls[0], t);
    return Gate::mcx(std::move(controls), t);
}

Gate mcz(std::vector<Qubit> controls, Qubit t) {
    if (controls.size() == 1) return Gate::cz(controls[0], t);
    return Gate::mcz(std::move(controls), t);
}

void declare(CircuitBlock& b, const Register& r) {
    for (Qubit q : r.qubits()) b.declared_support.push_back(q);
}

}  // namespace

CircuitBlock build_hadamards(const Register& reg) {
    CircuitBlock b;
    b.name = "V";
    for (Qubit q : reg.qubits()) b.append(Gate::h(q));
    declare(b, reg);
    b.normalize_support();
    return b;
}

CircuitBlock build_us(const Register& reg) {
    if (reg.width < 1) throw ContractError("U_s needs at least one qubit");
    CircuitBlock b;
    b.name = "U_s";
    const auto qs = reg.qubits();
    for (Qubit q : qs) b.append(Gate::h(q));
    for (Qubit q : qs) b.append(Gate::x(q));
    if (qs.size() == 1)
        b.append(Gate::z(qs[0]));
    else
        b.append(mcz(std::vector<Qubit>(qs.begin(), qs.end() - 1), qs.back()));
    for (Qubit q : qs) b.append(Gate::x(q));
    for (Qubit q : qs) b.append(Gate::h(q));
    declare(b, reg);
    b.normalize_support();
    return b;
}

CircuitBlock build_phcomp(const Register& a, const Register& b, const Register& ancilla) {
    const int n = a.width;
    if (n < 1 || b.width != n) throw ContractError("PhComp registers must have equal positive width");
    if (ancilla.width < 0 || ancilla.width > std::max(0, n - 2))
        throw ContractError("PhComp ancilla count must lie in [0, n-2]");
    const int anc = ancilla.width;

    CircuitBlock out;
    out.name = "PhComp";
    out.ancilla_used = anc;
    std::vector<Gate> compute;
    auto emit_compute = [&](const Gate& g) {
        compute.push_back(g);
        out.append(g);
    };

    for (int i = 0; i < n; ++i) emit_compute(Gate::x(a[i]));

    // After bit i is processed, b[i] holds (continue)_i. ancilla[k] holds the
    // AND of (continue)_{n-1} .. (continue)_{n-2-k}.
    for (int i = n - 1; i >= 0; --i) {
        const int above = n - 1 - i;  // number of (continue) bits above i
        std::vector<Qubit> controls{a[i]};
        if (above == 1) {
            controls.push_back(b[n - 1]);
        } else if (above >= 2) {
            if (above - 2 < anc) {
                controls.push_back(ancilla[above - 2]);
            } else {
                int first_plain = n - 1;
                if (anc > 0) {
                    controls.push_back(ancilla[anc - 1]);
                    first_plain = n - 2 - anc;
                }
                for (int j = first_plain; j > i; --j) controls.push_back(b[j]);
            }
        }
        out.append(mcz(controls, b[i]));
        if (i == 0) break;
        emit_compute(Gate::cnot(a[i], b[i]));
        const int k = n - 2 - i;
        if (k >= 0 && k < anc) {
            if (k == 0)
                emit_compute(Gate::mcx({b[n - 1], b[n - 2]}, ancilla[0]));
            else
                emit_compute(Gate::mcx({ancilla[k - 1], b[i]}, ancilla[k]));
        }
    }
    for (auto it = compute.rbegin(); it != compute.rend(); ++it) out.append(inverse(*it));

    declare(out, a);
    declare(out, b);
    declare(out, ancilla);
    out.normalize_support();
    return out;
}

CircuitBlock build_controlled_increment(const std::vector<Qubit>& controls, const Register& pos,
                                        int low, const Register& ancilla) {
    const int n = pos.width;
    if (low < 0 || low >= n) throw ContractError("increment low bit out of range");
    CircuitBlock out;
    out.name = "inc";
    // C[0] is the control (AND of all controls), C[t] = pos[low + t - 1].
    const int bits = n - low;
    const int usable = controls.size() == 1 ? std::max(0, std::min(ancilla.width, bits - 2)) : 0;
    out.ancilla_used = usable;
    auto chain = [&](int t) -> Qubit { return pos[low + t - 1]; };
    auto prefix = [&](int len) {  // controls ∪ pos[low .. low+len-2]
        std::vector<Qubit> c = controls;
        for (int t = 1; t < len; ++t) c.push_back(chain(t));
        return c;
    };
    auto anc_gate = [&](int k) {
        return k == 0 ? Gate::mcx({controls[0], chain(1)}, ancilla[0])
                      : Gate::mcx({ancilla[k - 1], chain(k + 1)}, ancilla[k]);
    };

    for (int k = 0; k < usable; ++k) out.append(anc_gate(k));
    for (int j = n - 1; j >= low; --j) {
        const int len = j - low + 1;  // controls plus the pos bits below j
        const int k = len - 3;
        if (len <= 2 || usable == 0) {
            out.append(controls.empty() && len == 1 ? Gate::x(pos[j]) : mcx(prefix(len), pos[j]));
        } else if (k < usable) {
            out.append(Gate::mcx({ancilla[k], chain(len - 1)}, pos[j]));
            out.append(anc_gate(k));
        } else {
            std::vector<Qubit> c{ancilla[usable - 1]};
            for (int t = usable + 1; t < len; ++t) c.push_back(chain(t));
            out.append(mcx(c, pos[j]));
        }
    }
    out.declared_support = controls;
    declare(out, pos);
    for (int k = 0; k < usable; ++k) out.declared_support.push_back(ancilla[k]);
    out.normalize_support();
    return out;
}

CircuitBlock build_carry_adder(const Register& x, const Register& v, const Register& ancilla) {
    const int n = v.width;
    if (n < 3 || x.width != n || ancilla.width != n - 2)
        throw ContractError("carry adder needs n >= 3, equal widths and n-2 ancilla");
    CircuitBlock out;
    out.name = "add";
    out.ancilla_used = n - 2;
    // ancilla[k] holds carry c_{k+1}; c_{i+1} = x_i v_i ^ x_i c_i ^ v_i c_i.
    auto carry_into = [&](int i, Qubit target) {
        if (i == 0) {
            out.append(Gate::mcx({x[0], v[0]}, target));
            return;
        }
        out.append(Gate::mcx({x[i], v[i]}, target));
        out.append(Gate::mcx({x[i], ancilla[i - 1]}, target));
        out.append(Gate::mcx({v[i], ancilla[i - 1]}, target));
    };
    for (int i = 0; i + 2 < n; ++i) carry_into(i, ancilla[i]);
    carry_into(n - 2, v[n - 1]);
    out.append(Gate::cnot(x[n - 1], v[n - 1]));
    for (int i = n - 2; i >= 1; --i) {
        out.append(Gate::cnot(x[i], v[i]));
        out.append(Gate::cnot(ancilla[i - 1], v[i]));
        carry_into(i - 1, ancilla[i - 1]);  // v[i-1] is still the input bit
    }
    out.append(Gate::cnot(x[0], v[0]));
    declare(out, x);
    declare(out, v);
    declare(out, ancilla);
    out.normalize_support();
    return out;
}

CircuitBlock build_controlled_permutation(const Permutation& perm, const Register& reg,
                                          const std::vector<Qubit>& controls) {
    if (perm.size() != (std::size_t{1} << reg.width) || !is_permutation(perm))
        throw ContractError("permutation does not match the register width");
    CircuitBlock out;
    out.name = "perm";
    auto transposition = [&](Label x, Label y) {
        const Label d = x ^ y;
        int pivot = 0;
        while (!((d >> pivot) & 1)) ++pivot;
        std::vector<Gate> steer;
        for (int q = 0; q < reg.width; ++q)
            if (q != pivot && ((d >> q) & 1)) steer.push_back(Gate::cnot(reg[pivot], reg[q]));
        // After steering, x and y differ only at the pivot; x' is x with the
        // steering applied (flip D' iff x has the pivot set).
        Label xs = x;
        if ((x >> pivot) & 1) xs ^= (d & ~(Label{1} << pivot));
        std::vector<Gate> negate;
        std::vector<Qubit> ctrl = controls;
        for (int q = 0; q < reg.width; ++q) {
            if (q == pivot) continue;
            ctrl.push_back(reg[q]);
            if (!((xs >> q) & 1)) negate.push_back(Gate::x(reg[q]));
        }
        for (const auto& g : steer) out.append(g);
        for (const auto& g : negate) out.append(g);
        out.append(ctrl.empty() ? Gate::x(reg[pivot]) : mcx(ctrl, reg[pivot]));
        for (const auto& g : negate) out.append(g);
        for (auto it = steer.rbegin(); it != steer.rend(); ++it) out.append(*it);
    };
    std::vector<bool> done(perm.size(), false);
    for (Label s = perm.size(); s-- > 0;) {
        if (done[s]) continue;
        std::vector<Label> cycle;
        for (Label v = s; !done[v]; v = perm[v]) {
            done[v] = true;
            cycle.push_back(v);
        }
        // Content at cycle[j] must move to cycle[j+1].
        for (std::size_t j = cycle.size(); j-- > 1;) transposition(cycle[j - 1], cycle[j]);
    }
    out.declared_support = controls;
    declare(out, reg);
    out.normalize_support();
    return out;
}

CircuitBlock build_controlled_wire_permutation(const std::vector<int>& wire_image,
                                               const Register& reg,
                                               const std::vector<Qubit>& controls) {
    if (static_cast<int>(wire_image.size()) != reg.width)
        throw ContractError("wire permutation does not match the register width");
    CircuitBlock plain;
    std::vector<bool> done(wire_image.size(), false);
    // Start each cycle at its largest wire so a unit rotation becomes the
    // nearest-neighbor cascade SWAP(1,0), SWAP(2,1), ...
    for (int s = reg.width; s-- > 0;) {
        if (done[s]) continue;
        std::vector<int> cycle;
        for (int w = s; !done[w]; w = wire_image[w]) {
            done[w] = true;
            cycle.push_back(w);
        }
        for (std::size_t j = cycle.size(); j-- > 1;)
            plain.append(Gate::swap(reg[cycle[j - 1]], reg[cycle[j]]));
    }
    CircuitBlock out = controls.empty() ? plain : add_controls(plain, controls);
    out.name = "wires";
    out.declared_support = controls;
    declare(out, reg);
    out.normalize_support();
    return out;
}

CircuitBlock add_controls(const CircuitBlock& block, const std::vector<Qubit>& extra) {
    CircuitBlock out;
    out.name = "c-" + block.name;
    out.ancilla_used = block.ancilla_used;
    for (const auto& g : block.gates) {
        switch (g.kind) {
            case GateKind::X:
            case GateKind::CNOT:
            case GateKind::MCX:
                out.append(mcx(concat(g.controls, extra), g.targets[0]));
                break;
            case GateKind::Z:
            case GateKind::CZ:
            case GateKind::MCZ:
                out.append(mcz(concat(g.controls, extra), g.targets[0]));
                break;
            case GateKind::SWAP: {
                const Qubit p = g.targets[0], q = g.targets[1];
                out.append(Gate::cnot(q, p));
                out.append(mcx(concat(concat(g.controls, extra), {p}), q));
                out.append(Gate::cnot(q, p));
                break;
            }
            default:
                throw ContractError("cannot add controls to " + to_string(g.kind));
        }
    }
    out.declared_support = concat(block.declared_support, extra);
    out.normalize_support();
    return out;
}

CircuitBlock build_group_action(const GroupSpec& spec, const RegisterLayout& layout, bool inverse_map) {
    if (layout.group_bits != spec.group_bits || layout.position_bits != spec.position_bits)
        throw ContractError("layout does not match the group (m = " +
                            std::to_string(spec.group_bits) + ", n = " +
                            std::to_string(spec.position_bits) + ")");
    const Register grp = layout.group();
    const Register pos = layout.position1();
    const Register anc = layout.ancilla();
    CircuitBlock out;
    out.name = "G";

    auto cyclic_powers = [&](const Register& sub, const Permutation& gen, CircuitBlock& dst,
                             const std::vector<Qubit>& extra) {
        for (int i = 0; i < sub.width; ++i) {
            const auto power = permutation_power(gen, std::uint64_t{1} << i);
            dst.append(build_controlled_permutation(power, pos, concat({sub[i]}, extra)));
        }
    };

    switch (spec.kind) {
        case GroupKind::AddModN:
            if (pos.width >= 3 && anc.width == pos.width - 2) {
                out.append(build_carry_adder(grp, pos, anc));
                break;
            }
            for (int i = 0; i < grp.width; ++i)
                out.append(build_controlled_increment({grp[i]}, pos, i, anc));
            break;
        case GroupKind::SpinTranslation:
            for (int i = 0; i < grp.width; ++i) {
                const int n = pos.width;
                const int r = static_cast<int>((std::uint64_t{1} << i) % spec.order);
                if (r == 0) continue;
                std::vector<int> image(n);
                for (int w = 0; w < n; ++w) image[w] = ((w - r) % n + n) % n;
                out.append(build_controlled_wire_permutation(image, pos, {grp[i]}));
            }
            break;
        case GroupKind::SingleCycleAbelian:
            cyclic_powers(grp, spec.generator, out, {});
            break;
        case GroupKind::TwoGeneratorComposite: {
            const Register x1{grp.offset, spec.sub_bits1};
            const Register x2{grp.offset + spec.sub_bits1, spec.sub_bits2};
            const Qubit order = grp[spec.sub_bits1 + spec.sub_bits2];
            // order = 0: G1 then G2; order = 1: G2 then G1.
            cyclic_powers(x2, spec.generator2, out, {order});
            cyclic_powers(x1, spec.generator, out, {});
            out.append(Gate::x(order));
            cyclic_powers(x2, spec.generator2, out, {order});
            out.append(Gate::x(order));
            break;
        }
    }
    declare(out, grp);
    declare(out, pos);
    out.normalize_support();
    if (inverse_map) {
        CircuitBlock inv = inverse(out);
        inv.name = "G^-1";
        return inv;
    }
    return out;
}

CompiledBlock compile(const CircuitBlock& logical, int num_qubits) {
    CompiledBlock cb;
    cb.logical = logical;
    cb.native = decompose_block(logical, num_qubits);
    cb.native_schedule = schedule(cb.native);
    return cb;
}

}  // namespace gmin
