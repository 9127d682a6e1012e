#include "qpesim/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qpesim/errors.hpp"
#include "qpesim/tolerances.hpp"

namespace qpesim {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

double zero_fraction(const ShotHistogram& hist) {
  if (hist.shots == 0)
    throw std::invalid_argument("histogram carries no shots");
  const auto it = hist.counts.find("0");
  const std::uint64_t zeros = it == hist.counts.end() ? 0 : it->second;
  return static_cast<double>(zeros) / static_cast<double>(hist.shots);
}

}  // namespace

double kitaev_point_estimate(const KitaevSample& sample) {
  if (std::abs(sample.c_hat) + std::abs(sample.s_hat) < tol::degenerate)
    throw DegenerateSampleError("cosine and sine estimates are both zero");
  double v = std::atan2(sample.s_hat, sample.c_hat) / kTau;
  v -= std::floor(v);
  if (v >= 1.0) v -= 1.0;
  return v;
}

KitaevSample kitaev_estimate_from_counts(const ShotHistogram& cos_hist,
                                         const ShotHistogram& sin_hist, int k) {
  const double c = 2.0 * zero_fraction(cos_hist) - 1.0;
  const double s = 1.0 - 2.0 * zero_fraction(sin_hist);
  return {k, std::clamp(c, -1.0, 1.0), std::clamp(s, -1.0, 1.0),
          cos_hist.shots};
}

double kitaev_stderr(const KitaevSample& sample) {
  if (sample.shots == 0)
    throw std::invalid_argument("standard error needs at least one shot");
  const double c = sample.c_hat;
  const double s = sample.s_hat;
  const double r2 = c * c + s * s;
  if (r2 < tol::degenerate)
    throw DegenerateSampleError("cosine and sine estimates are both zero");
  // Binomial variances (1-c^2)/N and (1-s^2)/N pushed through the atan2
  // gradient (-s, c)/r2, then divided by 2 pi for the turn fraction.
  const double var_num = s * s * (1.0 - c * c) + c * c * (1.0 - s * s);
  return std::sqrt(var_num) /
         (kTau * r2 * std::sqrt(static_cast<double>(sample.shots)));
}

PhaseFraction kitaev_stitch_bits(const std::vector<double>& per_k_estimates,
                                 int n) {
  const int m = static_cast<int>(per_k_estimates.size());
  if (m < 1)
    throw std::invalid_argument("stitching needs at least one estimate");
  if (n < 1 || n > m)
    throw std::invalid_argument("requested bits must lie in [1, estimates]");
  if (m > 63)
    throw std::invalid_argument("too many estimates for 64-bit fractions");
  for (double v : per_k_estimates)
    if (!(v >= 0.0 && v < 1.0))
      throw std::invalid_argument("per-k estimates must lie in [0, 1)");

  double rho = per_k_estimates[static_cast<std::size_t>(m - 1)];
  for (int k = m - 1; k >= 1; --k) {
    double best = 0.0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int b = 0; b < 2; ++b) {
      const double cand = (rho + static_cast<double>(b)) / 2.0;
      const double d =
          circular_distance(cand, per_k_estimates[static_cast<std::size_t>(k - 1)]);
      if (d < best_dist) {
        best_dist = d;
        best = cand;
      }
    }
    // The two candidates sit half a turn apart, so one is always within a
    // quarter turn of anything; only corrupted inputs land here.
    if (best_dist > 0.25 + tol::point)
      throw InconsistentEstimateError("successive estimates disagree", k);
    rho = best;
  }
  return PhaseFraction::from_integer(nearest_fraction_index(rho, m), m).prefix(n);
}

PhaseEstimate decode_histogram(const ShotHistogram& hist, int n,
                               Algorithm order) {
  if (order == Algorithm::Kitaev)
    throw std::invalid_argument(
        "Kitaev histograms are composite; decode via stitching");
  if (n < 1) throw std::invalid_argument("need at least one decoded bit");
  if (hist.counts.empty()) throw std::invalid_argument("empty histogram");
  for (const auto& [key, count] : hist.counts)
    if (static_cast<int>(key.size()) < n)
      throw std::invalid_argument("histogram key shorter than requested bits");

  const std::string* best = nullptr;
  std::uint64_t best_count = 0;
  for (const auto& [key, count] : hist.counts) {
    if (best == nullptr || count > best_count) {
      best = &key;
      best_count = count;
    }
  }

  std::string raw = best->substr(0, static_cast<std::size_t>(n));
  if (order == Algorithm::Iterative) std::reverse(raw.begin(), raw.end());
  std::vector<int> bits(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '0' && raw[i] != '1')
      throw std::invalid_argument("histogram key holds a non-binary digit");
    bits[i] = raw[i] - '0';
  }

  PhaseEstimate est;
  est.bits = PhaseFraction(std::move(bits));
  est.value = est.bits.value();
  return est;
}

DigitAccuracy digit_accuracy(
    const std::vector<std::pair<PhaseFraction, PhaseFraction>>& trials) {
  if (trials.empty())
    throw std::invalid_argument("digit accuracy needs at least one trial");
  const int width = trials.front().first.size();
  for (const auto& [truth, decoded] : trials)
    if (truth.size() != width || decoded.size() != width)
      throw std::invalid_argument("trial pairs must share one bit length");

  DigitAccuracy acc;
  acc.per_digit.assign(static_cast<std::size_t>(width), 0.0);
  for (const auto& [truth, decoded] : trials)
    for (int i = 0; i < width; ++i)
      if (truth.bits[static_cast<std::size_t>(i)] ==
          decoded.bits[static_cast<std::size_t>(i)])
        acc.per_digit[static_cast<std::size_t>(i)] += 1.0;

  double sum = 0.0;
  for (double& f : acc.per_digit) {
    f /= static_cast<double>(trials.size());
    sum += f;
  }
  acc.mean = sum / static_cast<double>(width);
  return acc;
}

}  // namespace qpesim
