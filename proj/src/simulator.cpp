#include "qpesim/simulator.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qpesim/errors.hpp"
#include "qpesim/rng.hpp"
#include "qpesim/tolerances.hpp"

namespace qpesim {

namespace {

void check_capacity(const Circuit& circuit, int max_qubits) {
  if (circuit.num_qubits > max_qubits)
    throw CapacityError("circuit needs " + std::to_string(circuit.num_qubits) +
                        " qubits, ceiling is " + std::to_string(max_qubits));
}

// Classical bits some measure writes, ascending: the key alphabet.
std::vector<int> measured_clbits(const Circuit& circuit) {
  std::vector<bool> written(static_cast<std::size_t>(circuit.num_clbits), false);
  for (const auto& op : circuit.ops)
    if (const auto* m = std::get_if<Measure>(&op))
      written[static_cast<std::size_t>(m->clbit)] = true;
  std::vector<int> order;
  for (int c = 0; c < circuit.num_clbits; ++c)
    if (written[static_cast<std::size_t>(c)]) order.push_back(c);
  return order;
}

std::string key_of(const std::vector<int>& clbits, const std::vector<int>& order) {
  std::string key;
  key.reserve(order.size());
  for (int c : order)
    key.push_back(static_cast<char>('0' + clbits[static_cast<std::size_t>(c)]));
  return key;
}

void inject_noise(StateVector& state, const GateOp& gate, const NoiseModel& noise,
                  RngStream& rng) {
  const std::size_t involved = gate.controls.size() + gate.targets.size();
  const double p = involved >= 2 ? noise.depol_2q : noise.depol_1q;
  for (int q : gate.controls)
    if (rng.uniform() < p) apply_pauli(state, static_cast<int>(rng.bits() % 3), q);
  for (int q : gate.targets)
    if (rng.uniform() < p) apply_pauli(state, static_cast<int>(rng.bits() % 3), q);
}

}  // namespace

std::map<std::string, double> exact_distribution(const Circuit& circuit,
                                                 int max_qubits) {
  circuit.validate();
  check_capacity(circuit, max_qubits);
  const auto order = measured_clbits(circuit);
  std::map<std::string, double> dist;

  std::function<void(std::size_t, StateVector, std::vector<int>, double)> walk =
      [&](std::size_t pos, StateVector state, std::vector<int> clbits,
          double weight) {
        for (std::size_t i = pos; i < circuit.ops.size(); ++i) {
          const auto& op = circuit.ops[i];
          if (const auto* gate = std::get_if<GateOp>(&op)) {
            apply_gate(state, *gate);
          } else if (const auto* cg = std::get_if<ConditionalGate>(&op)) {
            if (clbits[static_cast<std::size_t>(cg->clbit)])
              apply_gate(state, cg->gate);
          } else if (const auto* m = std::get_if<Measure>(&op)) {
            const double p0 = prob_zero(state, m->qubit);
            const double p1 = 1.0 - p0;
            if (weight * p1 > tol::branch_cutoff) {
              StateVector forked = state;
              collapse(forked, m->qubit, 1, p1);
              auto forked_clbits = clbits;
              forked_clbits[static_cast<std::size_t>(m->clbit)] = 1;
              walk(i + 1, std::move(forked), std::move(forked_clbits),
                   weight * p1);
            }
            if (weight * p0 > tol::branch_cutoff) {
              collapse(state, m->qubit, 0, p0);
              clbits[static_cast<std::size_t>(m->clbit)] = 0;
              weight *= p0;
              continue;
            }
            return;  // the surviving branch was handed off above
          }
        }
        dist[key_of(clbits, order)] += weight;
      };

  walk(0, StateVector::basis_state(circuit.num_qubits, 0),
       std::vector<int>(static_cast<std::size_t>(circuit.num_clbits), 0), 1.0);
  return dist;
}

ShotHistogram run_shot_range(const Circuit& circuit, std::uint64_t first,
                             std::uint64_t count,
                             const std::optional<NoiseModel>& noise,
                             std::uint64_t seed) {
  circuit.validate();
  check_capacity(circuit, kMaxQubits);
  const auto order = measured_clbits(circuit);

  ShotHistogram hist;
  hist.shots = count;
  hist.seed = seed;
  std::vector<int> clbits(static_cast<std::size_t>(circuit.num_clbits), 0);

  for (std::uint64_t shot = first; shot < first + count; ++shot) {
    RngStream rng(derive_seed(seed, shot));
    auto state = StateVector::basis_state(circuit.num_qubits, 0);
    std::fill(clbits.begin(), clbits.end(), 0);

    for (const auto& op : circuit.ops) {
      if (const auto* gate = std::get_if<GateOp>(&op)) {
        apply_gate(state, *gate);
        if (noise) inject_noise(state, *gate, *noise, rng);
      } else if (const auto* cg = std::get_if<ConditionalGate>(&op)) {
        if (clbits[static_cast<std::size_t>(cg->clbit)]) {
          apply_gate(state, cg->gate);
          if (noise) inject_noise(state, cg->gate, *noise, rng);
        }
      } else if (const auto* m = std::get_if<Measure>(&op)) {
        int bit = measure_qubit(state, m->qubit, rng);
        if (noise && rng.uniform() < noise->readout_flip) bit ^= 1;
        clbits[static_cast<std::size_t>(m->clbit)] = bit;
      }
    }
    ++hist.counts[key_of(clbits, order)];
  }
  return hist;
}

ShotHistogram run_shots(const Circuit& circuit, std::uint64_t shots,
                        const std::optional<NoiseModel>& noise,
                        std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  return run_shot_range(circuit, 0, shots, noise, seed);
}

void merge_into(ShotHistogram& accumulator, const ShotHistogram& part) {
  if (accumulator.shots == 0 && accumulator.counts.empty())
    accumulator.seed = part.seed;
  for (const auto& [key, count] : part.counts) accumulator.counts[key] += count;
  accumulator.shots += part.shots;
}

StateVector run_fragment(const Circuit& circuit, StateVector state) {
  if (state.num_qubits != circuit.num_qubits)
    throw std::invalid_argument("state width does not match the circuit");
  for (const auto& op : circuit.ops) {
    if (const auto* gate = std::get_if<GateOp>(&op))
      apply_gate(state, *gate);
    else if (!std::holds_alternative<Barrier>(op))
      throw std::invalid_argument(
          "fragment contains measurements or conditionals");
  }
  return state;
}

}  // namespace qpesim
