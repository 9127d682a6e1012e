#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qpesim {

// Binary fraction 0.x1 x2 ... xm with x1 carrying weight 1/2. Phases live
// on the unit circle, so value() is always in [0, 1).
struct PhaseFraction {
  std::vector<int> bits;

  PhaseFraction() = default;
  explicit PhaseFraction(std::vector<int> b);

  // Bits of `numerator` written as an m-digit binary fraction, most
  // significant digit first. Requires numerator < 2^m.
  static PhaseFraction from_integer(std::uint64_t numerator, int m);

  double value() const;
  int size() const { return static_cast<int>(bits.size()); }

  // First n bits, zero-padded on the right if n exceeds size().
  PhaseFraction prefix(int n) const;

  std::string str() const;

  bool operator==(const PhaseFraction&) const = default;
};

// Distance on the unit circle: min(|a-b|, 1-|a-b|) after reducing both
// operands mod 1. Used everywhere phases are compared.
double circular_distance(double a, double b);

// Index of the m-bit fraction nearest to x (mod 1). An exact half-step tie
// resolves toward the smaller index.
std::uint64_t nearest_fraction_index(double x, int m);

}  // namespace qpesim
