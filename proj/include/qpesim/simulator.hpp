#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "qpesim/circuit.hpp"
#include "qpesim/noise.hpp"
#include "qpesim/statevector.hpp"

namespace qpesim {

// Hard ceiling on simulated register width: 2^24 amplitudes is 256 MB of
// complex doubles, the practical limit for this dense kernel. Both the
// exact and sampling entry points enforce it (CapacityError).
inline constexpr int kMaxQubits = 24;

struct ShotHistogram {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;  // parent seed the counts were drawn under
};

// Exact outcome distribution via branch enumeration: the simulation forks
// at every measurement, weighting each branch by its outcome probability,
// so the cost is exponential only in the number of measurements. Keys are
// the values of measured classical bits in ascending clbit order; the
// probabilities sum to 1 within 1e-10.
std::map<std::string, double> exact_distribution(const Circuit& circuit,
                                                 int max_qubits = kMaxQubits);

// Samples `shots` independent trajectories. Shot i draws from its own RNG
// stream seeded with derive_seed(seed, i), so results are a pure function
// of (circuit, shots, noise, seed) no matter how shots are scheduled.
ShotHistogram run_shots(const Circuit& circuit, std::uint64_t shots,
                        const std::optional<NoiseModel>& noise, std::uint64_t seed);

// Shots [first, first + count): the partition primitive behind run_shots.
// Merging ranges that cover disjoint shot indices reproduces the one-pass
// histogram bit for bit.
ShotHistogram run_shot_range(const Circuit& circuit, std::uint64_t first,
                             std::uint64_t count,
                             const std::optional<NoiseModel>& noise,
                             std::uint64_t seed);

void merge_into(ShotHistogram& accumulator, const ShotHistogram& part);

// Runs a measurement-free circuit as a unitary on `state`. Rejects
// measures and conditionals; used for fragment-level identities.
StateVector run_fragment(const Circuit& circuit, StateVector state);

}  // namespace qpesim
