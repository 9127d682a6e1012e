#include "qpesim/builders.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <variant>

#include "qpesim/errors.hpp"

namespace qpesim {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

void check_register_width(int bits) {
  if (bits < 1)
    throw std::invalid_argument("readout register needs at least one bit");
  if (bits > 62)
    throw std::invalid_argument("readout register too wide for 64-bit powers");
}

Circuit kitaev_base(int k, const PhaseFraction& phase, bool with_s) {
  if (k < 1 || k > 62)
    throw std::invalid_argument("doubling index must lie in [1, 62]");
  Circuit circuit(2, 1);
  circuit.x(1);
  circuit.h(0);
  if (with_s) circuit.s(0);
  circuit.cu_power(0, 1, kTau * phase.value(), std::uint64_t{1} << (k - 1));
  circuit.h(0);
  circuit.measure(0, 0);
  circuit.validate();
  return circuit;
}

// Kickback stage shared by the QFT-readout and constant-precision forms:
// register qubit j accumulates the phase at weight 2^j, either via a
// controlled power on the prepped ancilla (last qubit) or directly as an
// unconditional Phase. The Phase angle is written as angle * double(power)
// so the ancilla-removal rewrite reproduces it bit for bit.
void append_kickback(Circuit& circuit, int register_width, double angle,
                     bool with_ancilla) {
  if (with_ancilla) {
    circuit.x(register_width);
    for (int j = 0; j < register_width; ++j) {
      circuit.h(j);
      circuit.cu_power(j, register_width, angle, std::uint64_t{1} << j);
    }
  } else {
    for (int j = 0; j < register_width; ++j) {
      circuit.h(j);
      circuit.phase(j, angle * static_cast<double>(std::uint64_t{1} << j));
    }
  }
}

}  // namespace

Circuit kitaev_cos_circuit(int k, const PhaseFraction& phase) {
  return kitaev_base(k, phase, false);
}

Circuit kitaev_sin_circuit(int k, const PhaseFraction& phase) {
  return kitaev_base(k, phase, true);
}

std::pair<Circuit, Circuit> kitaev_pair(int k, const PhaseFraction& phase) {
  return {kitaev_cos_circuit(k, phase), kitaev_sin_circuit(k, phase)};
}

void append_inverse_qft(Circuit& circuit, const std::vector<int>& qubits) {
  if (qubits.empty())
    throw std::invalid_argument("inverse QFT needs at least one qubit");
  std::set<int> seen;
  for (int q : qubits) {
    if (q < 0 || q >= circuit.num_qubits)
      throw std::invalid_argument("inverse QFT qubit index out of range");
    if (!seen.insert(q).second)
      throw std::invalid_argument("inverse QFT qubit listed twice");
  }
  const int count = static_cast<int>(qubits.size());
  for (int pos = 0; pos < count; ++pos) {
    circuit.h(qubits[pos]);
    for (int j = 2; pos + j - 1 < count; ++j)
      circuit.cphase(qubits[pos + j - 1], qubits[pos], -kTau / std::ldexp(1.0, j));
  }
}

Circuit inverse_qft_fragment(int num_qubits, const std::vector<int>& qubits) {
  Circuit circuit(num_qubits, 0);
  append_inverse_qft(circuit, qubits);
  circuit.validate();
  return circuit;
}

Circuit inverse_fragment(const Circuit& fragment) {
  Circuit out(fragment.num_qubits, fragment.num_clbits);
  for (auto it = fragment.ops.rbegin(); it != fragment.ops.rend(); ++it) {
    if (const auto* gate = std::get_if<GateOp>(&*it)) {
      GateOp inverse = *gate;
      switch (gate->kind) {
        case GateKind::H:
        case GateKind::X:
          break;
        case GateKind::S:
          inverse.kind = GateKind::Phase;
          inverse.angle = -std::numbers::pi / 2.0;
          break;
        case GateKind::Phase:
        case GateKind::CPhase:
        case GateKind::CUPower:
          inverse.angle = -gate->angle;
          break;
      }
      out.ops.emplace_back(std::move(inverse));
    } else if (std::holds_alternative<Barrier>(*it)) {
      out.ops.emplace_back(Barrier{});
    } else {
      throw std::invalid_argument("cannot invert a measured fragment");
    }
  }
  return out;
}

Circuit iqft_qpe(int n, const PhaseFraction& phase, bool with_ancilla) {
  check_register_width(n);
  Circuit circuit(with_ancilla ? n + 1 : n, n);
  append_kickback(circuit, n, kTau * phase.value(), with_ancilla);

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = n - 1 - j;
  append_inverse_qft(circuit, order);

  for (int q = 0; q < n; ++q) circuit.measure(q, q);
  circuit.validate();
  return circuit;
}

Circuit iterative_qpe(int n, const PhaseFraction& phase) {
  check_register_width(n);
  const double angle = kTau * phase.value();
  Circuit circuit(2, n);
  circuit.x(1);
  for (int j = 1; j <= n; ++j) {
    // Recycle the readout qubit: undo a |1> left by the previous round.
    if (j >= 2) circuit.cond(j - 2, GateOp{GateKind::X, {0}, {}, 0.0, 1});
    circuit.h(0);
    circuit.cu_power(0, 1, angle, std::uint64_t{1} << (n - j));
    for (int l = 2; l <= j; ++l)
      circuit.cond(j - l,
                   GateOp{GateKind::Phase, {0}, {}, -kTau / std::ldexp(1.0, l), 1});
    circuit.h(0);
    circuit.measure(0, j - 1);
  }
  circuit.validate();
  return circuit;
}

Circuit acp_qpe(int n, const PhaseFraction& phase, bool with_ancilla) {
  check_register_width(n);
  const int guards = std::min(2, std::max(0, phase.size() - n));
  const int width = n + guards;
  check_register_width(width);
  Circuit circuit(with_ancilla ? width + 1 : width, width);
  append_kickback(circuit, width, kTau * phase.value(), with_ancilla);

  for (int q = width - 1; q >= 0; --q) {
    if (q + 1 <= width - 1) circuit.cphase(q + 1, q, -kTau / 4.0);
    if (q + 2 <= width - 1) circuit.cphase(q + 2, q, -kTau / 8.0);
    circuit.h(q);
    circuit.measure(q, q);
  }
  circuit.validate();
  return circuit;
}

Circuit remove_ancilla(const Circuit& circuit) {
  circuit.validate();

  struct Usage {
    int x_preps = 0;
    int kickbacks = 0;  // single-control CONTROLLED-U-POWERs aimed here
    int other = 0;      // any reference outside the pattern
    std::ptrdiff_t first_x = -1;
    std::ptrdiff_t first_kickback = -1;
  };
  std::vector<Usage> usage(static_cast<std::size_t>(circuit.num_qubits));

  for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
    const auto& op = circuit.ops[i];
    if (const auto* gate = std::get_if<GateOp>(&op)) {
      if (gate->kind == GateKind::X && gate->controls.empty()) {
        auto& u = usage[static_cast<std::size_t>(gate->targets[0])];
        ++u.x_preps;
        if (u.first_x < 0) u.first_x = static_cast<std::ptrdiff_t>(i);
        continue;
      }
      if (gate->kind == GateKind::CUPower && gate->controls.size() == 1) {
        auto& u = usage[static_cast<std::size_t>(gate->targets[0])];
        ++u.kickbacks;
        if (u.first_kickback < 0)
          u.first_kickback = static_cast<std::ptrdiff_t>(i);
        ++usage[static_cast<std::size_t>(gate->controls[0])].other;
        continue;
      }
      for (int t : gate->targets) ++usage[static_cast<std::size_t>(t)].other;
      for (int c : gate->controls) ++usage[static_cast<std::size_t>(c)].other;
    } else if (const auto* m = std::get_if<Measure>(&op)) {
      ++usage[static_cast<std::size_t>(m->qubit)].other;
    } else if (const auto* cg = std::get_if<ConditionalGate>(&op)) {
      for (int t : cg->gate.targets) ++usage[static_cast<std::size_t>(t)].other;
      for (int c : cg->gate.controls) ++usage[static_cast<std::size_t>(c)].other;
    }
  }

  std::optional<int> ancilla;
  for (int q = 0; q < circuit.num_qubits; ++q) {
    const auto& u = usage[static_cast<std::size_t>(q)];
    if (u.x_preps != 1 || u.kickbacks < 1 || u.other != 0 ||
        u.first_x > u.first_kickback)
      continue;
    if (ancilla)
      throw RewriteError("two qubits match the eigenstate-prep pattern");
    ancilla = q;
  }
  if (!ancilla)
    throw RewriteError("no qubit matches the eigenstate-prep pattern");

  const int anc = *ancilla;
  const auto remap = [anc](int q) { return q > anc ? q - 1 : q; };
  Circuit out(circuit.num_qubits - 1, circuit.num_clbits);
  for (const auto& op : circuit.ops) {
    if (const auto* gate = std::get_if<GateOp>(&op)) {
      if (gate->kind == GateKind::X && gate->targets[0] == anc) continue;
      if (gate->kind == GateKind::CUPower && gate->targets[0] == anc) {
        out.ops.emplace_back(GateOp{GateKind::Phase,
                                    {remap(gate->controls[0])},
                                    {},
                                    gate->angle * static_cast<double>(gate->power),
                                    1});
        continue;
      }
      GateOp moved = *gate;
      for (int& t : moved.targets) t = remap(t);
      for (int& c : moved.controls) c = remap(c);
      out.ops.emplace_back(std::move(moved));
    } else if (const auto* m = std::get_if<Measure>(&op)) {
      out.ops.emplace_back(Measure{remap(m->qubit), m->clbit});
    } else if (const auto* cg = std::get_if<ConditionalGate>(&op)) {
      ConditionalGate moved = *cg;
      for (int& t : moved.gate.targets) t = remap(t);
      for (int& c : moved.gate.controls) c = remap(c);
      out.ops.emplace_back(std::move(moved));
    } else {
      out.ops.emplace_back(Barrier{});
    }
  }
  out.validate();
  return out;
}

}  // namespace qpesim
