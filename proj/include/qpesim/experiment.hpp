#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpesim/circuit.hpp"
#include "qpesim/estimation.hpp"
#include "qpesim/noise.hpp"
#include "qpesim/phase_fraction.hpp"

namespace qpesim {

enum class ReportFormat { Json, Csv };

struct RunConfig {
  Algorithm algorithm = Algorithm::Iqft;
  PhaseFraction phase;
  int num_bits = 4;            // n: phase readout digits
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;      // no wall-clock fallback; callers must choose
  std::optional<NoiseModel> noise;
  ReportFormat format = ReportFormat::Json;
  bool dump_circuit = false;
  int repeat = 1;              // independent repetitions, sub-seeded per run
  bool rewrite = false;        // apply remove_ancilla to the built circuit
  int kitaev_k_max = 0;        // 0 means num_bits
};

struct ExperimentReport {
  RunConfig config;
  ShotHistogram histogram;     // merged across repetitions; Kitaev runs use
                               // composite keys "k<k>.cos.<bit>" / ".sin."
  PhaseEstimate decoded;
  double correct_prob = 0.0;   // frequency of the exact n-bit readout
                               // (Kitaev: fraction of repetitions stitching
                               // to the true bits)
  GateCounts gate_counts;
  int depth = 0;
  std::vector<double> per_digit;  // per-repetition decode accuracy; empty
  double per_digit_mean = 0.0;    // unless repeat > 1
  double wall_ms = 0.0;        // informational; never serialized
};

// "0.1011" (binary fraction) or "11/16" (rational with power-of-two
// denominator, converted exactly, not reduced: the denominator fixes the
// bit count). Anything else raises ParseError with the byte position.
PhaseFraction parse_phase(const std::string& text);

// "default" or comma-separated readout=R,depol1=A,depol2=B (each optional,
// probabilities in [0,1]).
NoiseModel parse_noise(const std::string& text);

const char* algorithm_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

ExperimentReport run_experiment(const RunConfig& config);

// Stable-key-order JSON or CSV (`bitstring,count,probability` rows sorted
// by key, then `# decoded=...` trailer comments). Byte-identical for
// identical reports.
std::string emit_report(const ExperimentReport& report, ReportFormat format);

// Circuit JSON for --dump-circuit: the single built circuit, or for the
// Kitaev variant an array of {k, cos, sin} documents.
std::string dump_circuit_json(const RunConfig& config);

}  // namespace qpesim
