#include "qpesim/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qpesim/builders.hpp"
#include "qpesim/errors.hpp"
#include "qpesim/rng.hpp"
#include "qpesim/simulator.hpp"

namespace qpesim {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t parse_uint(const std::string& text, std::size_t begin,
                         std::size_t end, const char* what) {
  if (begin >= end) throw ParseError(std::string(what) + " is empty", begin);
  std::uint64_t value = 0;
  for (std::size_t i = begin; i < end; ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw ParseError(std::string(what) + " must be decimal digits", i);
    const std::uint64_t digit = static_cast<std::uint64_t>(text[i] - '0');
    if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
      throw ParseError(std::string(what) + " is too large", begin);
    value = value * 10 + digit;
  }
  return value;
}

// Shortest round-trip decimal; integral doubles print without a trailing
// ".0", which keeps CSV rows like "1011,64,1" stable.
std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void validate_config(const RunConfig& config) {
  if (config.phase.size() < 1)
    throw std::invalid_argument("config needs a phase");
  if (config.num_bits < 1)
    throw std::invalid_argument("config needs at least one readout bit");
  if (config.shots == 0)
    throw std::invalid_argument("config needs at least one shot");
  if (config.repeat < 1)
    throw std::invalid_argument("config needs at least one repetition");
  if (config.kitaev_k_max < 0)
    throw std::invalid_argument("kitaev_k_max cannot be negative");
}

Circuit build_circuit(const RunConfig& config) {
  Circuit circuit;
  switch (config.algorithm) {
    case Algorithm::Iterative:
      circuit = iterative_qpe(config.num_bits, config.phase);
      break;
    case Algorithm::Iqft:
      circuit = iqft_qpe(config.num_bits, config.phase, true);
      break;
    case Algorithm::IqftModified:
      circuit = iqft_qpe(config.num_bits, config.phase, false);
      break;
    case Algorithm::Acp:
      circuit = acp_qpe(config.num_bits, config.phase, true);
      break;
    case Algorithm::AcpModified:
      circuit = acp_qpe(config.num_bits, config.phase, false);
      break;
    case Algorithm::Kitaev:
      throw std::logic_error("Kitaev runs a circuit pair per k");
  }
  if (config.rewrite) circuit = remove_ancilla(circuit);
  return circuit;
}

ExperimentReport run_single_circuit(const RunConfig& config) {
  const Circuit circuit = build_circuit(config);
  const PhaseFraction truth = config.phase.prefix(config.num_bits);

  ExperimentReport report;
  report.config = config;
  report.gate_counts = count_gates(circuit);
  report.depth = circuit_depth(circuit);

  std::vector<std::pair<PhaseFraction, PhaseFraction>> trials;
  trials.reserve(static_cast<std::size_t>(config.repeat));
  for (int rep = 0; rep < config.repeat; ++rep) {
    const auto hist =
        run_shots(circuit, config.shots, config.noise,
                  derive_seed(config.seed, static_cast<std::uint64_t>(rep)));
    trials.emplace_back(
        truth, decode_histogram(hist, config.num_bits, config.algorithm).bits);
    merge_into(report.histogram, hist);
  }
  report.histogram.seed = config.seed;
  report.decoded =
      decode_histogram(report.histogram, config.num_bits, config.algorithm);

  std::uint64_t correct = 0;
  const std::string want = truth.str();
  for (const auto& [key, count] : report.histogram.counts) {
    std::string head = key.substr(0, static_cast<std::size_t>(config.num_bits));
    if (config.algorithm == Algorithm::Iterative)
      std::reverse(head.begin(), head.end());
    if (head == want) correct += count;
  }
  report.correct_prob = static_cast<double>(correct) /
                        static_cast<double>(report.histogram.shots);

  if (config.repeat > 1) {
    const auto acc = digit_accuracy(trials);
    report.per_digit = acc.per_digit;
    report.per_digit_mean = acc.mean;
  }
  return report;
}

ExperimentReport run_kitaev(const RunConfig& config) {
  const int k_max =
      config.kitaev_k_max > 0 ? config.kitaev_k_max : config.num_bits;
  if (k_max < config.num_bits)
    throw std::invalid_argument("kitaev_k_max below the requested bit count");
  const PhaseFraction truth = config.phase.prefix(config.num_bits);

  ExperimentReport report;
  report.config = config;

  std::vector<std::pair<Circuit, Circuit>> pairs;
  pairs.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    auto [cosc, sinc] = kitaev_pair(k, config.phase);
    if (config.rewrite) {
      cosc = remove_ancilla(cosc);
      sinc = remove_ancilla(sinc);
    }
    const auto gc = count_gates(cosc);
    const auto gs = count_gates(sinc);
    report.gate_counts.total += gc.total + gs.total;
    report.gate_counts.controlled += gc.controlled + gs.controlled;
    report.depth = std::max({report.depth, circuit_depth(cosc), circuit_depth(sinc)});
    pairs.emplace_back(std::move(cosc), std::move(sinc));
  }

  struct PairTotals {
    ShotHistogram cos_hist;
    ShotHistogram sin_hist;
  };
  std::vector<PairTotals> totals(static_cast<std::size_t>(k_max));
  std::vector<std::pair<PhaseFraction, PhaseFraction>> trials;
  trials.reserve(static_cast<std::size_t>(config.repeat));
  int correct_reps = 0;
  for (int rep = 0; rep < config.repeat; ++rep) {
    const std::uint64_t rep_seed =
        derive_seed(config.seed, static_cast<std::uint64_t>(rep));
    std::vector<double> per_k(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
      const auto& [cosc, sinc] = pairs[static_cast<std::size_t>(k - 1)];
      const auto cos_hist =
          run_shots(cosc, config.shots, config.noise,
                    derive_seed(rep_seed, 2 * static_cast<std::uint64_t>(k)));
      const auto sin_hist = run_shots(
          sinc, config.shots, config.noise,
          derive_seed(rep_seed, 2 * static_cast<std::uint64_t>(k) + 1));
      auto& acc = totals[static_cast<std::size_t>(k - 1)];
      merge_into(acc.cos_hist, cos_hist);
      merge_into(acc.sin_hist, sin_hist);
      per_k[static_cast<std::size_t>(k - 1)] = kitaev_point_estimate(
          kitaev_estimate_from_counts(cos_hist, sin_hist, k));
    }
    const auto bits = kitaev_stitch_bits(per_k, config.num_bits);
    if (bits == truth) ++correct_reps;
    trials.emplace_back(truth, bits);
  }

  // Composite histogram: per-k zero/one totals for both circuits, all four
  // keys always present so columns line up across runs.
  for (int k = 1; k <= k_max; ++k) {
    const auto& acc = totals[static_cast<std::size_t>(k - 1)];
    const auto bucket = [](const ShotHistogram& h, const char* key) {
      const auto it = h.counts.find(key);
      return it == h.counts.end() ? std::uint64_t{0} : it->second;
    };
    const std::string prefix = "k" + std::to_string(k);
    report.histogram.counts[prefix + ".cos.0"] = bucket(acc.cos_hist, "0");
    report.histogram.counts[prefix + ".cos.1"] = bucket(acc.cos_hist, "1");
    report.histogram.counts[prefix + ".sin.0"] = bucket(acc.sin_hist, "0");
    report.histogram.counts[prefix + ".sin.1"] = bucket(acc.sin_hist, "1");
    report.histogram.shots += acc.cos_hist.shots + acc.sin_hist.shots;
  }
  report.histogram.seed = config.seed;

  report.decoded.per_k.resize(static_cast<std::size_t>(k_max));
  report.decoded.stderr_per_k.resize(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    const auto& acc = totals[static_cast<std::size_t>(k - 1)];
    const auto sample = kitaev_estimate_from_counts(acc.cos_hist, acc.sin_hist, k);
    report.decoded.per_k[static_cast<std::size_t>(k - 1)] =
        kitaev_point_estimate(sample);
    report.decoded.stderr_per_k[static_cast<std::size_t>(k - 1)] =
        kitaev_stderr(sample);
  }
  report.decoded.bits = kitaev_stitch_bits(report.decoded.per_k, config.num_bits);
  report.decoded.value = report.decoded.bits.value();
  report.correct_prob =
      static_cast<double>(correct_reps) / static_cast<double>(config.repeat);

  if (config.repeat > 1) {
    const auto acc = digit_accuracy(trials);
    report.per_digit = acc.per_digit;
    report.per_digit_mean = acc.mean;
  }
  return report;
}

ordered_json report_json(const ExperimentReport& report) {
  const RunConfig& config = report.config;
  ordered_json j;
  j["config"]["algorithm"] = algorithm_name(config.algorithm);
  j["config"]["phase"]["bits"] = config.phase.str();
  j["config"]["phase"]["value"] = config.phase.value();
  j["config"]["qubits"] = config.num_bits;
  j["config"]["shots"] = config.shots;
  j["config"]["seed"] = config.seed;
  j["config"]["repeat"] = config.repeat;
  if (config.noise) {
    j["config"]["noise"]["readout"] = config.noise->readout_flip;
    j["config"]["noise"]["depol1"] = config.noise->depol_1q;
    j["config"]["noise"]["depol2"] = config.noise->depol_2q;
  } else {
    j["config"]["noise"] = nullptr;
  }
  j["config"]["rewrite"] = config.rewrite;

  j["histogram"] = ordered_json::object();
  for (const auto& [key, count] : report.histogram.counts)
    j["histogram"][key] = count;

  j["decoded"]["bits"] = report.decoded.bits.str();
  j["decoded"]["value"] = report.decoded.value;
  if (!report.decoded.per_k.empty()) {
    j["decoded"]["per_k"] = report.decoded.per_k;
    j["decoded"]["stderr_per_k"] = report.decoded.stderr_per_k;
  }
  j["correct_prob"] = report.correct_prob;
  j["gate_counts"]["total"] = report.gate_counts.total;
  j["gate_counts"]["controlled"] = report.gate_counts.controlled;
  j["depth"] = report.depth;
  if (!report.per_digit.empty()) {
    j["per_digit_accuracy"]["per_digit"] = report.per_digit;
    j["per_digit_accuracy"]["mean"] = report.per_digit_mean;
  }
  return j;
}

std::string report_csv(const ExperimentReport& report) {
  std::string out = "bitstring,count,probability\n";
  const double shots = static_cast<double>(report.histogram.shots);
  for (const auto& [key, count] : report.histogram.counts) {
    out += key;
    out += ',';
    out += std::to_string(count);
    out += ',';
    out += format_double(static_cast<double>(count) / shots);
    out += '\n';
  }
  out += "# decoded=" + report.decoded.bits.str() + "\n";
  out += "# decoded_value=" + format_double(report.decoded.value) + "\n";
  out += "# correct_prob=" + format_double(report.correct_prob) + "\n";
  out += "# gates_total=" + std::to_string(report.gate_counts.total) + "\n";
  out += "# gates_controlled=" + std::to_string(report.gate_counts.controlled) +
         "\n";
  out += "# depth=" + std::to_string(report.depth) + "\n";
  if (!report.per_digit.empty()) {
    out += "# per_digit=";
    for (std::size_t i = 0; i < report.per_digit.size(); ++i) {
      if (i) out += ',';
      out += format_double(report.per_digit[i]);
    }
    out += "\n# per_digit_mean=" + format_double(report.per_digit_mean) + "\n";
  }
  return out;
}

}  // namespace

PhaseFraction parse_phase(const std::string& text) {
  if (text.size() >= 2 && text[0] == '0' && text[1] == '.') {
    if (text.size() == 2)
      throw ParseError("binary fraction needs digits after the point", 2);
    std::vector<int> bits;
    bits.reserve(text.size() - 2);
    for (std::size_t i = 2; i < text.size(); ++i) {
      if (text[i] != '0' && text[i] != '1')
        throw ParseError("binary fraction digits must be 0 or 1", i);
      bits.push_back(text[i] - '0');
    }
    return PhaseFraction(std::move(bits));
  }

  const std::size_t slash = text.find('/');
  if (slash != std::string::npos) {
    const std::uint64_t num = parse_uint(text, 0, slash, "numerator");
    const std::uint64_t den =
        parse_uint(text, slash + 1, text.size(), "denominator");
    if (den < 2 || (den & (den - 1)) != 0)
      throw ParseError("denominator must be a power of two", slash + 1);
    if (num >= den) throw ParseError("phase must lie in [0, 1)", 0);
    int m = 0;
    for (std::uint64_t d = den; d > 1; d >>= 1) ++m;
    return PhaseFraction::from_integer(num, m);
  }

  throw ParseError("phase must look like 0.1011 or 11/16", 0);
}

NoiseModel parse_noise(const std::string& text) {
  if (text == "default") return NoiseModel::defaults();
  if (text.empty()) throw ParseError("empty noise spec", 0);

  NoiseModel noise = NoiseModel::defaults();
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    const std::size_t eq = text.find('=', pos);
    if (eq == std::string::npos || eq >= end)
      throw ParseError("expected key=value in noise spec", pos);

    const std::string key = text.substr(pos, eq - pos);
    double value = 0.0;
    const char* vbegin = text.data() + eq + 1;
    const char* vend = text.data() + end;
    const auto res = std::from_chars(vbegin, vend, value);
    if (res.ec != std::errc{} || res.ptr != vend)
      throw ParseError("noise value must be a number", eq + 1);
    if (!(value >= 0.0 && value <= 1.0))
      throw ParseError("noise probabilities must lie in [0, 1]", eq + 1);

    if (key == "readout")
      noise.readout_flip = value;
    else if (key == "depol1")
      noise.depol_1q = value;
    else if (key == "depol2")
      noise.depol_2q = value;
    else
      throw ParseError("unknown noise key (readout, depol1, depol2)", pos);

    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return noise;
}

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Kitaev: return "kitaev";
    case Algorithm::Iterative: return "iterative";
    case Algorithm::Iqft: return "iqft";
    case Algorithm::IqftModified: return "iqft_modified";
    case Algorithm::Acp: return "acp";
    case Algorithm::AcpModified: return "acp_modified";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a :
       {Algorithm::Kitaev, Algorithm::Iterative, Algorithm::Iqft,
        Algorithm::IqftModified, Algorithm::Acp, Algorithm::AcpModified})
    if (name == algorithm_name(a)) return a;
  return std::nullopt;
}

ExperimentReport run_experiment(const RunConfig& config) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report = config.algorithm == Algorithm::Kitaev
                                ? run_kitaev(config)
                                : run_single_circuit(config);
  const auto stop = std::chrono::steady_clock::now();
  report.wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
  if (format == ReportFormat::Csv) return report_csv(report);
  return report_json(report).dump(2) + "\n";
}

std::string dump_circuit_json(const RunConfig& config) {
  validate_config(config);
  if (config.algorithm == Algorithm::Kitaev) {
    const int k_max =
        config.kitaev_k_max > 0 ? config.kitaev_k_max : config.num_bits;
    ordered_json arr = ordered_json::array();
    for (int k = 1; k <= k_max; ++k) {
      auto [cosc, sinc] = kitaev_pair(k, config.phase);
      if (config.rewrite) {
        cosc = remove_ancilla(cosc);
        sinc = remove_ancilla(sinc);
      }
      ordered_json entry;
      entry["k"] = k;
      entry["cos"] = ordered_json::parse(cosc.to_json_string());
      entry["sin"] = ordered_json::parse(sinc.to_json_string());
      arr.push_back(std::move(entry));
    }
    return arr.dump(2) + "\n";
  }
  const Circuit circuit = build_circuit(config);
  std::string text = circuit.to_json_string(2);
  text += '\n';
  return text;
}

}  // namespace qpesim
