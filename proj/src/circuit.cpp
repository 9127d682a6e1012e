#include "qpesim/circuit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace qpesim {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::S: return "s";
    case GateKind::Phase: return "phase";
    case GateKind::CPhase: return "cphase";
    case GateKind::CUPower: return "cu_power";
  }
  return "?";
}

GateKind kind_from_name(const std::string& name) {
  for (GateKind kind : {GateKind::H, GateKind::X, GateKind::S, GateKind::Phase,
                        GateKind::CPhase, GateKind::CUPower})
    if (name == kind_name(kind)) return kind;
  throw std::invalid_argument("unknown gate kind \"" + name + "\"");
}

bool has_angle(GateKind kind) {
  return kind == GateKind::Phase || kind == GateKind::CPhase ||
         kind == GateKind::CUPower;
}

ordered_json gate_to_json(const GateOp& gate) {
  ordered_json j;
  j["kind"] = kind_name(gate.kind);
  j["targets"] = gate.targets;
  if (!gate.controls.empty()) j["controls"] = gate.controls;
  if (has_angle(gate.kind)) j["angle"] = gate.angle;
  if (gate.kind == GateKind::CUPower) j["power"] = gate.power;
  return j;
}

GateOp gate_from_json(const ordered_json& j) {
  GateOp gate;
  gate.kind = kind_from_name(j.at("kind").get<std::string>());
  gate.targets = j.at("targets").get<std::vector<int>>();
  if (j.contains("controls"))
    gate.controls = j.at("controls").get<std::vector<int>>();
  if (j.contains("angle")) gate.angle = j.at("angle").get<double>();
  if (j.contains("power")) gate.power = j.at("power").get<std::uint64_t>();
  return gate;
}

}  // namespace

void Circuit::h(int qubit) {
  ops.emplace_back(GateOp{GateKind::H, {qubit}, {}, 0.0, 1});
}

void Circuit::x(int qubit) {
  ops.emplace_back(GateOp{GateKind::X, {qubit}, {}, 0.0, 1});
}

void Circuit::s(int qubit) {
  ops.emplace_back(GateOp{GateKind::S, {qubit}, {}, 0.0, 1});
}

void Circuit::phase(int qubit, double angle) {
  ops.emplace_back(GateOp{GateKind::Phase, {qubit}, {}, angle, 1});
}

void Circuit::cphase(int control, int target, double angle) {
  ops.emplace_back(GateOp{GateKind::CPhase, {target}, {control}, angle, 1});
}

void Circuit::cu_power(int control, int target, double angle,
                       std::uint64_t power) {
  ops.emplace_back(GateOp{GateKind::CUPower, {target}, {control}, angle, power});
}

void Circuit::measure(int qubit, int clbit) {
  ops.emplace_back(Measure{qubit, clbit});
}

void Circuit::cond(int clbit, GateOp gate) {
  ops.emplace_back(ConditionalGate{clbit, std::move(gate)});
}

void Circuit::barrier() { ops.emplace_back(Barrier{}); }

void Circuit::validate() const {
  if (num_qubits < 0 || num_clbits < 0)
    throw std::invalid_argument("register sizes cannot be negative");

  const auto check_qubit = [this](int q, const char* what) {
    if (q < 0 || q >= num_qubits)
      throw std::invalid_argument(std::string(what) + " index out of range");
  };
  const auto check_gate = [&](const GateOp& gate) {
    if (gate.targets.size() != 1)
      throw std::invalid_argument("gate needs exactly one target");
    check_qubit(gate.targets[0], "target");
    const bool controlled =
        gate.kind == GateKind::CPhase || gate.kind == GateKind::CUPower;
    if (controlled && gate.controls.size() != 1)
      throw std::invalid_argument("controlled gate needs exactly one control");
    if (!controlled && !gate.controls.empty())
      throw std::invalid_argument("plain gate cannot carry controls");
    for (int c : gate.controls) {
      check_qubit(c, "control");
      if (c == gate.targets[0])
        throw std::invalid_argument("control equals target");
    }
  };

  std::vector<bool> written(static_cast<std::size_t>(num_clbits), false);
  for (const auto& op : ops) {
    if (const auto* gate = std::get_if<GateOp>(&op)) {
      check_gate(*gate);
    } else if (const auto* m = std::get_if<Measure>(&op)) {
      check_qubit(m->qubit, "measured qubit");
      if (m->clbit < 0 || m->clbit >= num_clbits)
        throw std::invalid_argument("classical bit index out of range");
      written[static_cast<std::size_t>(m->clbit)] = true;
    } else if (const auto* cg = std::get_if<ConditionalGate>(&op)) {
      if (cg->clbit < 0 || cg->clbit >= num_clbits)
        throw std::invalid_argument("classical bit index out of range");
      if (!written[static_cast<std::size_t>(cg->clbit)])
        throw std::invalid_argument(
            "conditional gate reads a classical bit never measured");
      check_gate(cg->gate);
    }
  }
}

std::string Circuit::to_json_string(int indent) const {
  ordered_json j;
  j["num_qubits"] = num_qubits;
  j["num_clbits"] = num_clbits;
  auto& out = j["ops"] = ordered_json::array();
  for (const auto& op : ops) {
    if (const auto* gate = std::get_if<GateOp>(&op)) {
      out.push_back(gate_to_json(*gate));
    } else if (const auto* m = std::get_if<Measure>(&op)) {
      ordered_json mj;
      mj["kind"] = "measure";
      mj["qubit"] = m->qubit;
      mj["clbit"] = m->clbit;
      out.push_back(std::move(mj));
    } else if (const auto* cg = std::get_if<ConditionalGate>(&op)) {
      auto gj = gate_to_json(cg->gate);
      gj["clbit"] = cg->clbit;
      out.push_back(std::move(gj));
    } else {
      out.push_back(ordered_json{{"kind", "barrier"}});
    }
  }
  return j.dump(indent);
}

Circuit Circuit::from_json_string(const std::string& text) {
  const auto j = ordered_json::parse(text);
  Circuit circuit(j.at("num_qubits").get<int>(), j.at("num_clbits").get<int>());
  for (const auto& oj : j.at("ops")) {
    const auto kind = oj.at("kind").get<std::string>();
    if (kind == "measure") {
      circuit.ops.emplace_back(
          Measure{oj.at("qubit").get<int>(), oj.at("clbit").get<int>()});
    } else if (kind == "barrier") {
      circuit.ops.emplace_back(Barrier{});
    } else if (oj.contains("clbit")) {
      circuit.ops.emplace_back(
          ConditionalGate{oj.at("clbit").get<int>(), gate_from_json(oj)});
    } else {
      circuit.ops.emplace_back(gate_from_json(oj));
    }
  }
  return circuit;
}

GateCounts count_gates(const Circuit& circuit) {
  GateCounts counts;
  for (const auto& op : circuit.ops) {
    const GateOp* gate = std::get_if<GateOp>(&op);
    if (!gate)
      if (const auto* cg = std::get_if<ConditionalGate>(&op)) gate = &cg->gate;
    if (!gate) continue;
    ++counts.total;
    if (!gate->controls.empty()) ++counts.controlled;
  }
  return counts;
}

int circuit_depth(const Circuit& circuit) {
  std::vector<int> qubit_front(static_cast<std::size_t>(circuit.num_qubits), 0);
  std::vector<int> clbit_front(static_cast<std::size_t>(circuit.num_clbits), 0);
  int deepest = 0;

  const auto place_gate = [&](const GateOp& gate, int clbit) {
    int layer = 0;
    for (int t : gate.targets) layer = std::max(layer, qubit_front[t]);
    for (int c : gate.controls) layer = std::max(layer, qubit_front[c]);
    if (clbit >= 0) layer = std::max(layer, clbit_front[clbit]);
    ++layer;
    for (int t : gate.targets) qubit_front[t] = layer;
    for (int c : gate.controls) qubit_front[c] = layer;
    if (clbit >= 0) clbit_front[clbit] = layer;
    deepest = std::max(deepest, layer);
  };

  for (const auto& op : circuit.ops) {
    if (const auto* gate = std::get_if<GateOp>(&op)) {
      place_gate(*gate, -1);
    } else if (const auto* m = std::get_if<Measure>(&op)) {
      const int layer =
          std::max(qubit_front[m->qubit], clbit_front[m->clbit]) + 1;
      qubit_front[m->qubit] = layer;
      clbit_front[m->clbit] = layer;
      deepest = std::max(deepest, layer);
    } else if (const auto* cg = std::get_if<ConditionalGate>(&op)) {
      place_gate(cg->gate, cg->clbit);
    } else {
      for (int& f : qubit_front) f = deepest;
      for (int& f : clbit_front) f = deepest;
    }
  }
  return deepest;
}

}  // namespace qpesim
