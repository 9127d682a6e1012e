#include "qpesim/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qpesim {

namespace {

struct Unitary2 {
  std::complex<double> u00, u01, u10, u11;
};

Unitary2 unitary_of(const GateOp& op) {
  switch (op.kind) {
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      return {{r, 0.0}, {r, 0.0}, {r, 0.0}, {-r, 0.0}};
    }
    case GateKind::X:
      return {{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
    case GateKind::S:
      return {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}};
    case GateKind::Phase:
    case GateKind::CPhase:
      return {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, std::polar(1.0, op.angle)};
    case GateKind::CUPower:
      return {{1.0, 0.0},
              {0.0, 0.0},
              {0.0, 0.0},
              std::polar(1.0, op.angle * static_cast<double>(op.power))};
  }
  throw std::invalid_argument("unknown gate kind");
}

std::size_t qubit_mask(const StateVector& state, int qubit, const char* what) {
  if (qubit < 0 || qubit >= state.num_qubits)
    throw std::invalid_argument(std::string(what) + " qubit index out of range");
  return std::size_t{1} << (state.num_qubits - 1 - qubit);
}

}  // namespace

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
  // Index arithmetic is the only limit here; the simulator entry points
  // apply their own, much tighter memory ceiling.
  if (num_qubits < 0 || num_qubits > 28)
    throw std::invalid_argument("qubit count out of range");
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw std::invalid_argument("basis index out of range");
  StateVector state;
  state.num_qubits = num_qubits;
  state.amps.assign(dim, {0.0, 0.0});
  state.amps[index] = {1.0, 0.0};
  return state;
}

double StateVector::norm_sq() const {
  double total = 0.0;
  for (const auto& a : amps) total += std::norm(a);
  return total;
}

void apply_gate(StateVector& state, const GateOp& op) {
  if (op.targets.size() != 1)
    throw std::invalid_argument("gate needs exactly one target");
  const std::size_t tmask = qubit_mask(state, op.targets[0], "target");
  std::size_t cmask = 0;
  for (int c : op.controls) {
    if (c == op.targets[0])
      throw std::invalid_argument("control equals target");
    cmask |= qubit_mask(state, c, "control");
  }

  const auto u = unitary_of(op);
  const std::size_t dim = state.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & tmask) != 0 || (i & cmask) != cmask) continue;
    const std::size_t j = i | tmask;
    const auto a0 = state.amps[i];
    const auto a1 = state.amps[j];
    state.amps[i] = u.u00 * a0 + u.u01 * a1;
    state.amps[j] = u.u10 * a0 + u.u11 * a1;
  }
}

double prob_zero(const StateVector& state, int qubit) {
  const std::size_t mask = qubit_mask(state, qubit, "measured");
  double p = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i)
    if ((i & mask) == 0) p += std::norm(state.amps[i]);
  return p;
}

void collapse(StateVector& state, int qubit, int bit, double prob) {
  const std::size_t mask = qubit_mask(state, qubit, "measured");
  if (!(prob > 0.0))
    throw std::invalid_argument("collapse onto a zero-probability outcome");
  const double scale = 1.0 / std::sqrt(prob);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if ((((i & mask) != 0) ? 1 : 0) == bit)
      state.amps[i] *= scale;
    else
      state.amps[i] = {0.0, 0.0};
  }
}

int measure_qubit(StateVector& state, int qubit, RngStream& rng) {
  const double p0 = prob_zero(state, qubit);
  const int bit = rng.uniform() < p0 ? 0 : 1;
  collapse(state, qubit, bit, bit == 0 ? p0 : 1.0 - p0);
  return bit;
}

void apply_pauli(StateVector& state, int axis, int qubit) {
  const std::size_t mask = qubit_mask(state, qubit, "noise");
  if (axis < 0 || axis > 2)
    throw std::invalid_argument("pauli axis must be 0, 1, or 2");
  const std::size_t dim = state.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & mask) != 0) continue;
    const std::size_t j = i | mask;
    const auto a0 = state.amps[i];
    const auto a1 = state.amps[j];
    switch (axis) {
      case 0:
        state.amps[i] = a1;
        state.amps[j] = a0;
        break;
      case 1:
        state.amps[i] = std::complex<double>(0.0, -1.0) * a1;
        state.amps[j] = std::complex<double>(0.0, 1.0) * a0;
        break;
      default:
        state.amps[j] = -a1;
        break;
    }
  }
}

}  // namespace qpesim
