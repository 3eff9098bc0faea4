#pragma once

#include <vector>

#include "gmin/gates.hpp"

namespace gmin {

/// Rewrites an MCX/MCZ (or any gate on more than two qubits) into 1- and
/// 2-qubit gates.
///
/// `clean_ancilla` are qubits known to be |0>; they are returned to |0>.
/// `borrowable` are idle qubits in an arbitrary state; they are returned to
/// their input state. Strategy, in order of preference:
///   k = 1: CNOT / CZ.
///   k = 2: the exact 6-CNOT Clifford+T Toffoli (or CCZ).
///   k - 2 clean ancilla: compute-uncompute Toffoli chain, 2(k-2)+1 Toffolis.
///   k - 2 ancilla of any kind: Barenco et al. Lemma 7.2, 4(k-2) Toffolis.
///   one spare qubit: Lemma 7.3 split into two halves borrowing each other.
///   nothing spare: a phase polynomial over all subsets (exponential, tiny k only).
std::vector<Gate> decompose_multicontrolled(const Gate& gate,
                                            const std::vector<Qubit>& clean_ancilla = {},
                                            const std::vector<Qubit>& borrowable = {});

/// Decomposes every non-native gate of `block`. Qubits in [0, num_qubits)
/// not used by a gate may be borrowed by that gate's decomposition.
CircuitBlock decompose_block(const CircuitBlock& block, int num_qubits);

}  // namespace gmin
