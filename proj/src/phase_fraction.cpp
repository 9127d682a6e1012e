#include "qpesim/phase_fraction.hpp"

#include <cmath>
#include <stdexcept>

namespace qpesim {

PhaseFraction::PhaseFraction(std::vector<int> b) : bits(std::move(b)) {
  if (bits.empty())
    throw std::invalid_argument("phase fraction needs at least one bit");
  for (int bit : bits)
    if (bit != 0 && bit != 1)
      throw std::invalid_argument("phase bits must be 0 or 1");
}

PhaseFraction PhaseFraction::from_integer(std::uint64_t numerator, int m) {
  if (m < 1 || m > 63)
    throw std::invalid_argument("bit count must be in [1, 63]");
  if (numerator >> m != 0)
    throw std::invalid_argument("numerator does not fit in the bit count");
  std::vector<int> bits(m);
  for (int i = 0; i < m; ++i)
    bits[i] = static_cast<int>((numerator >> (m - 1 - i)) & 1);
  return PhaseFraction(std::move(bits));
}

double PhaseFraction::value() const {
  double v = 0.0;
  for (int i = 0; i < size(); ++i)
    if (bits[i]) v += std::ldexp(1.0, -(i + 1));
  return v;
}

PhaseFraction PhaseFraction::prefix(int n) const {
  if (n < 1) throw std::invalid_argument("prefix length must be positive");
  std::vector<int> out(n, 0);
  for (int i = 0; i < n && i < size(); ++i) out[i] = bits[i];
  return PhaseFraction(std::move(out));
}

std::string PhaseFraction::str() const {
  std::string s;
  s.reserve(bits.size());
  for (int bit : bits) s.push_back(static_cast<char>('0' + bit));
  return s;
}

double circular_distance(double a, double b) {
  const double d = std::abs((a - std::floor(a)) - (b - std::floor(b)));
  return std::min(d, 1.0 - d);
}

std::uint64_t nearest_fraction_index(double x, int m) {
  if (m < 1 || m > 63)
    throw std::invalid_argument("bit count must be in [1, 63]");
  const std::uint64_t dim = std::uint64_t{1} << m;
  const double scaled = (x - std::floor(x)) * static_cast<double>(dim);
  // ceil(y - 1/2) is round-half-down, so an exact tie takes the smaller
  // index; the wrap past the top lands on 0.
  const auto idx = static_cast<std::uint64_t>(std::ceil(scaled - 0.5));
  return idx & (dim - 1);
}

}  // namespace qpesim
