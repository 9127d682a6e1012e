#pragma once

#include <cstdint>
#include <random>

namespace qpesim {

// One SplitMix64 step (public-domain mixer by Sebastiano Vigna). Used only
// to derive child seeds; the per-stream generator is mt19937_64, whose
// output sequence is fixed by the standard, so histograms are reproducible
// across platforms and standard libraries.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Child seed for stream `salt` of a parent `seed`. Every shot trajectory
// (and every repetition, and every Kitaev sub-circuit) gets its own stream
// this way, so work can be split across threads in any order and merged
// without changing a single bit of the result.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t s = seed;
  splitmix64(s);  // advance once to decorrelate raw user seeds
  s ^= (salt + 1) * 0xd1b54a32d192ed03ULL;
  return splitmix64(s);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qpesim
