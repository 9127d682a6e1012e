#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qpesim {

// Gate vocabulary. CUPower is a controlled diag(1, e^{i*angle}) applied
// `power` times, kept unfolded so circuit listings show the base angle and
// repetition count separately.
enum class GateKind { H, X, S, Phase, CPhase, CUPower };

struct GateOp {
  GateKind kind;
  std::vector<int> targets;   // exactly one target for every kind
  std::vector<int> controls;  // empty unless the gate is controlled
  double angle = 0.0;         // Phase, CPhase, CUPower
  std::uint64_t power = 1;    // CUPower only

  bool operator==(const GateOp&) const = default;
};

struct Measure {
  int qubit;
  int clbit;
  bool operator==(const Measure&) const = default;
};

// Apply `gate` iff classical bit `clbit` (previously measured) reads 1.
struct ConditionalGate {
  int clbit;
  GateOp gate;
  bool operator==(const ConditionalGate&) const = default;
};

struct Barrier {
  bool operator==(const Barrier&) const = default;
};

using Op = std::variant<GateOp, Measure, ConditionalGate, Barrier>;

struct GateCounts {
  int total = 0;       // gate ops, conditional or not; measures excluded
  int controlled = 0;  // gate ops with at least one quantum control
  bool operator==(const GateCounts&) const = default;
};

struct Circuit {
  int num_qubits = 0;
  int num_clbits = 0;
  std::vector<Op> ops;

  Circuit() = default;
  Circuit(int num_qubits, int num_clbits)
      : num_qubits(num_qubits), num_clbits(num_clbits) {}

  void h(int qubit);
  void x(int qubit);
  void s(int qubit);
  void phase(int qubit, double angle);
  void cphase(int control, int target, double angle);
  void cu_power(int control, int target, double angle, std::uint64_t power);
  void measure(int qubit, int clbit);
  void cond(int clbit, GateOp gate);
  void barrier();

  // Checks index bounds, per-kind arity, and that every conditional reads a
  // classical bit some earlier measure wrote. Throws std::invalid_argument.
  void validate() const;

  // JSON document {num_qubits, num_clbits, ops: [...]}. Each op carries
  // kind/targets/controls plus angle/power/clbit where meaningful; a clbit
  // on a non-measure op marks it as classically conditioned.
  std::string to_json_string(int indent = 2) const;
  static Circuit from_json_string(const std::string& text);

  bool operator==(const Circuit&) const = default;
};

GateCounts count_gates(const Circuit& circuit);

// Layered depth over qubit and classical wires. A barrier aligns all wires
// to the current deepest layer without occupying one itself.
int circuit_depth(const Circuit& circuit);

}  // namespace qpesim
