#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qpesim/circuit.hpp"
#include "qpesim/rng.hpp"

namespace qpesim {

// Dense state vector over num_qubits qubits. Qubit 0 is the most
// significant bit of the amplitude index, matching its position as the
// leftmost character of readout bitstrings: amplitude index i holds basis
// state |b_0 b_1 ... b_{n-1}> with b_q = (i >> (n-1-q)) & 1.
struct StateVector {
  int num_qubits = 0;
  std::vector<std::complex<double>> amps;

  static StateVector basis_state(int num_qubits, std::uint64_t index);

  std::size_t dim() const { return amps.size(); }
  double norm_sq() const;
};

// Applies the (possibly controlled) 2x2 unitary of `op` in place.
void apply_gate(StateVector& state, const GateOp& op);

// Probability of reading 0 on `qubit`.
double prob_zero(const StateVector& state, int qubit);

// Projects onto `bit` for `qubit` and renormalizes. `prob` is the
// probability mass of that outcome, already computed by the caller.
void collapse(StateVector& state, int qubit, int bit, double prob);

// Samples an outcome for `qubit`, collapses the state, returns the bit.
int measure_qubit(StateVector& state, int qubit, RngStream& rng);

// Pauli injection for the stochastic noise channel. axis: 0 = X, 1 = Y,
// 2 = Z. Not part of the gate vocabulary; noise is a simulator effect.
void apply_pauli(StateVector& state, int axis, int qubit);

}  // namespace qpesim
