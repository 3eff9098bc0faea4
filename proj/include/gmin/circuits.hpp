#pragma once

#include <vector>

#include "gmin/gates.hpp"
#include "gmin/groups.hpp"
#include "gmin/statevector.hpp"

namespace gmin {

/// Reflection I - 2|s><s| on `reg` (H, X, MCZ, X, H).
CircuitBlock build_us(const Register& reg);

/// V = H on every qubit of `reg`.
CircuitBlock build_hadamards(const Register& reg);

/// Phase comparator: |a>|b> -> -|a>|b> iff a < b.
///
/// `ancilla` holds up to n-2 clean qubits that cache ANDs of the (continue)
/// bits; each one removes a control from the later comparison gates.
CircuitBlock build_phcomp(const Register& a, const Register& b, const Register& ancilla);

/// Controlled increment of bits [low, n) of `pos` (adds 2^low mod 2^n), the
/// bit-dropped form of the incrementer power. `ancilla` qubits carry the
/// prefix ANDs of the carry chain; with none, the carries become
/// multi-controlled X gates.
CircuitBlock build_controlled_increment(const std::vector<Qubit>& controls, const Register& pos,
                                        int low, const Register& ancilla);

/// In-place |x>|v> -> |x>|x + v mod 2^n> that stores the carries c_1..c_{n-2}
/// in n-2 clean ancilla and folds c_{n-1} straight into the top bit. Linear
/// in n; used for AddModN when the maximum ancilla count is available.
CircuitBlock build_carry_adder(const Register& x, const Register& v, const Register& ancilla);

/// Reversible circuit for a permutation of the basis states of `reg`,
/// conditioned on every qubit in `controls`. Built from transpositions, each
/// realized by CNOT steering and one multi-controlled X.
CircuitBlock build_controlled_permutation(const Permutation& perm, const Register& reg,
                                          const std::vector<Qubit>& controls);

/// Circuit permuting the wires of `reg`: logical bit i moves to bit
/// wire_image[i]. Implemented with (controlled) SWAPs along cycles.
CircuitBlock build_controlled_wire_permutation(const std::vector<int>& wire_image,
                                               const Register& reg,
                                               const std::vector<Qubit>& controls);

/// Group action |x>|v> -> |x>|g(x) v> (or its inverse), realized as
/// controlled g^{2^i} blocks on group qubit i. AddModN with n-2 ancilla uses
/// the carry adder instead.
CircuitBlock build_group_action(const GroupSpec& spec, const RegisterLayout& layout,
                                bool inverse = false);

/// Adds `extra` as controls to every gate (X->CNOT->MCX, Z->CZ->MCZ, SWAP ->
/// CNOT/MCX/CNOT). Other kinds are rejected.
CircuitBlock add_controls(const CircuitBlock& block, const std::vector<Qubit>& extra);

/// Logical block plus its native decomposition and schedule.
CompiledBlock compile(const CircuitBlock& logical, int num_qubits);

}  // namespace gmin
