#include <optional>
#include <stdexcept>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "qpesim/builders.hpp"
#include "qpesim/circuit.hpp"
#include "qpesim/errors.hpp"
#include "qpesim/estimation.hpp"
#include "qpesim/experiment.hpp"
#include "qpesim/noise.hpp"
#include "qpesim/phase_fraction.hpp"
#include "qpesim/simulator.hpp"

namespace py = pybind11;
using namespace qpesim;

namespace {

Algorithm algorithm_from_string(const std::string& name) {
  const auto a = parse_algorithm(name);
  if (!a) throw std::invalid_argument("unknown algorithm: " + name);
  return *a;
}

// JSON-in, JSON-out experiment runner so python callers need no binding
// for every RunConfig field.
std::string run_experiment_json(const std::string& config_text) {
  const auto doc = nlohmann::json::parse(config_text);
  RunConfig config;
  config.algorithm =
      algorithm_from_string(doc.value("algorithm", std::string("iqft")));
  config.phase = parse_phase(doc.at("phase").get<std::string>());
  config.num_bits = doc.value("qubits", 4);
  config.shots = doc.value("shots", std::uint64_t{1024});
  config.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("noise") && !doc.at("noise").is_null())
    config.noise = parse_noise(doc.at("noise").get<std::string>());
  config.repeat = doc.value("repeat", 1);
  config.rewrite = doc.value("rewrite", false);
  return emit_report(run_experiment(config), ReportFormat::Json);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum phase estimation simulator core";

  py::register_exception<RewriteError>(m, "RewriteError");
  py::register_exception<CapacityError>(m, "CapacityError");
  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<InconsistentEstimateError>(m,
                                                    "InconsistentEstimateError");
  py::register_exception<DegenerateSampleError>(m, "DegenerateSampleError");

  py::class_<PhaseFraction>(m, "PhaseFraction")
      .def(py::init<std::vector<int>>())
      .def_static("from_integer", &PhaseFraction::from_integer)
      .def("value", &PhaseFraction::value)
      .def("size", &PhaseFraction::size)
      .def("prefix", &PhaseFraction::prefix)
      .def("str", &PhaseFraction::str)
      .def_readonly("bits", &PhaseFraction::bits)
      .def("__eq__",
           [](const PhaseFraction& a, const PhaseFraction& b) { return a == b; })
      .def("__repr__", [](const PhaseFraction& p) {
        return "PhaseFraction(0." + p.str() + ")";
      });

  py::class_<Circuit>(m, "Circuit")
      .def_readonly("num_qubits", &Circuit::num_qubits)
      .def_readonly("num_clbits", &Circuit::num_clbits)
      .def("to_json_string", &Circuit::to_json_string, py::arg("indent") = 2)
      .def_static("from_json_string", &Circuit::from_json_string)
      .def("__eq__", [](const Circuit& a, const Circuit& b) { return a == b; });

  py::class_<ShotHistogram>(m, "ShotHistogram")
      .def_readonly("counts", &ShotHistogram::counts)
      .def_readonly("shots", &ShotHistogram::shots)
      .def_readonly("seed", &ShotHistogram::seed);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init<>())
      .def_readwrite("readout_flip", &NoiseModel::readout_flip)
      .def_readwrite("depol_1q", &NoiseModel::depol_1q)
      .def_readwrite("depol_2q", &NoiseModel::depol_2q)
      .def_static("defaults", &NoiseModel::defaults);

  py::class_<GateCounts>(m, "GateCounts")
      .def_readonly("total", &GateCounts::total)
      .def_readonly("controlled", &GateCounts::controlled);

  py::class_<PhaseEstimate>(m, "PhaseEstimate")
      .def_readonly("value", &PhaseEstimate::value)
      .def_readonly("bits", &PhaseEstimate::bits)
      .def_readonly("per_k", &PhaseEstimate::per_k)
      .def_readonly("stderr_per_k", &PhaseEstimate::stderr_per_k);

  m.def("parse_phase", &parse_phase);
  m.def("parse_noise", &parse_noise);

  m.def("kitaev_pair", &kitaev_pair);
  m.def("iqft_qpe", &iqft_qpe);
  m.def("iterative_qpe", &iterative_qpe);
  m.def("acp_qpe", &acp_qpe);
  m.def("inverse_qft_fragment", &inverse_qft_fragment);
  m.def("remove_ancilla", &remove_ancilla);

  m.def("exact_distribution", &exact_distribution, py::arg("circuit"),
        py::arg("max_qubits") = kMaxQubits);
  m.def("run_shots", &run_shots, py::arg("circuit"), py::arg("shots"),
        py::arg("noise") = std::nullopt, py::arg("seed") = 0);
  m.def("count_gates", &count_gates);
  m.def("circuit_depth", &circuit_depth);

  m.def("kitaev_stitch_bits", &kitaev_stitch_bits);
  m.def("decode_histogram",
        [](const ShotHistogram& hist, int n, const std::string& order) {
          return decode_histogram(hist, n, algorithm_from_string(order));
        });

  m.def("run_experiment_json", &run_experiment_json);
}
