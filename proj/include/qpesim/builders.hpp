#pragma once

#include <utility>
#include <vector>

#include "qpesim/circuit.hpp"
#include "qpesim/phase_fraction.hpp"

namespace qpesim {

// Circuit constructors for the phase-estimation family. The unitary under
// estimation is always U = diag(1, e^{2*pi*i*phase}) with eigenstate |1>,
// so an ancilla-form circuit preps its last qubit with X and kicks phases
// back from CONTROLLED-U-POWER gates; the modified (ancilla-free) form
// folds each kickback into an unconditional Phase on the control qubit.

// Two-qubit interferometry pair for the k-th doubled phase 2^{k-1}*phase:
// X on the ancilla q1; H on q0; (sin circuit only) S on q0; controlled
// U^{2^{k-1}}; H; measure q0. Exact statistics: P(0|cos) =
// (1 + cos(2*pi*phase_k))/2 and P(0|sin) = (1 - sin(2*pi*phase_k))/2.
Circuit kitaev_cos_circuit(int k, const PhaseFraction& phase);
Circuit kitaev_sin_circuit(int k, const PhaseFraction& phase);
std::pair<Circuit, Circuit> kitaev_pair(int k, const PhaseFraction& phase);

// Inverse-QFT fragment appended to `circuit` over `qubits`, most
// significant first: for each listed qubit, H, then CPHASE(-2*pi/2^j) from
// the (j-1)-th later qubit. No terminal swaps; callers pass the qubit list
// in the order that makes readout land on the right classical bits.
void append_inverse_qft(Circuit& circuit, const std::vector<int>& qubits);
Circuit inverse_qft_fragment(int num_qubits, const std::vector<int>& qubits);

// Reverses a measurement-free fragment: ops in reverse order with angles
// negated (H and X are self-inverse; S inverts to Phase(-pi/2)).
Circuit inverse_fragment(const Circuit& fragment);

// Full QFT-readout estimator on n bits. Qubit j receives kickback power
// 2^j, so after the inverse QFT, qubit i measures x_{i+1} into clbit i and
// the histogram key reads x1 x2 ... xn left to right.
Circuit iqft_qpe(int n, const PhaseFraction& phase, bool with_ancilla);

// Single-readout-qubit estimator, bits extracted least significant first
// with measured bits fed back as conditional Phase corrections; round j
// writes clbit j-1. Decoding reverses the bit order in one place.
Circuit iterative_qpe(int n, const PhaseFraction& phase);

// Constant-precision estimator: kickback as in iqft_qpe, readout truncated
// to the two nearest-neighbor corrections. Processing runs from the last
// register qubit down; each qubit gets CPHASE(-2*pi/4) from its successor
// and CPHASE(-2*pi/8) from the qubit after that (when present), then H,
// then an immediate measure. Truncation keeps every digit's success rate
// at cos^2(pi*theta) with theta < 1/8, i.e. above cos^2(pi/8) ~ 0.8536.
//
// When the phase carries more bits than n, up to two guard qubits extend
// the register so the last asserted digits also have both correction
// sources; guards are measured into clbits n.. and ignored by decoding.
Circuit acp_qpe(int n, const PhaseFraction& phase, bool with_ancilla);

// Deletes the eigenstate ancilla: the unique qubit prepared by a single X
// (before any kickback) and referenced only as the target of
// single-control CONTROLLED-U-POWER gates, never measured. Each such gate
// becomes Phase(angle * power) on its control, other ops are kept in
// order, and qubit indices are recompacted. Anything outside this pattern
// throws RewriteError; the input is never returned unchanged.
Circuit remove_ancilla(const Circuit& circuit);

}  // namespace qpesim
