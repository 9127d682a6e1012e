#include "qpesim/cli.hpp"

#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "qpesim/errors.hpp"
#include "qpesim/experiment.hpp"

namespace qpesim {

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Quantum phase estimation simulator"};

  std::string algorithm_text = "iqft";
  std::string phase_text;
  int qubits = 4;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  std::string noise_text;
  std::string format_text = "json";
  bool dump_circuit = false;
  int repeat = 100;
  bool rewrite = false;

  app.add_option("--algorithm", algorithm_text,
                 "kitaev, iterative, iqft, iqft_modified, acp, acp_modified")
      ->capture_default_str();
  app.add_option("--phase", phase_text, "phase as 0.1011 or 11/16")->required();
  app.add_option("--qubits", qubits, "readout bits n")->capture_default_str();
  app.add_option("--shots", shots, "shots per circuit execution")
      ->capture_default_str();
  app.add_option("--seed", seed, "RNG seed (runs are reproducible)")->required();
  app.add_option("--noise", noise_text,
                 "'default' or readout=R,depol1=A,depol2=B");
  app.add_option("--format", format_text, "report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_flag("--dump-circuit", dump_circuit,
               "print the circuit JSON instead of running");
  app.add_option("--repeat", repeat, "independent seeded repetitions")
      ->capture_default_str();
  app.add_flag("--rewrite", rewrite, "apply the ancilla-removal rewrite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    RunConfig config;
    const auto algorithm = parse_algorithm(algorithm_text);
    if (!algorithm) {
      err << "unknown algorithm: " << algorithm_text << "\n";
      return 2;
    }
    config.algorithm = *algorithm;
    config.phase = parse_phase(phase_text);
    config.num_bits = qubits;
    config.shots = shots;
    config.seed = seed;
    if (!noise_text.empty()) config.noise = parse_noise(noise_text);
    config.format =
        format_text == "csv" ? ReportFormat::Csv : ReportFormat::Json;
    config.dump_circuit = dump_circuit;
    config.repeat = repeat;
    config.rewrite = rewrite;

    if (config.dump_circuit) {
      out << dump_circuit_json(config);
      return 0;
    }

    const ExperimentReport report = run_experiment(config);
    out << emit_report(report, config.format);
    err << "wall_ms=" << report.wall_ms << "\n";
    return 0;
  } catch (const CapacityError& e) {
    err << e.what() << "\n";
    return 3;
  } catch (const RewriteError& e) {
    err << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
}

}  // namespace qpesim
