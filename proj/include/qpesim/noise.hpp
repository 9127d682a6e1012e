#pragma once

namespace qpesim {

// Stochastic-Pauli depolarizing noise plus classical readout flips.
// After each gate, every involved qubit is hit with a uniformly random
// Pauli with the arity-appropriate probability; each measured bit is
// flipped with probability readout_flip after the quantum measurement
// (the collapsed state keeps the true outcome).
//
// Defaults are of the order of early five-qubit superconducting hardware
// error rates; they are configuration, not claims about any device.
struct NoiseModel {
  double readout_flip = 0.03;
  double depol_1q = 0.001;
  double depol_2q = 0.02;

  static NoiseModel defaults() { return NoiseModel{}; }

  bool operator==(const NoiseModel&) const = default;
};

}  // namespace qpesim
