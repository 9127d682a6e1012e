#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qpesim/phase_fraction.hpp"
#include "qpesim/simulator.hpp"

namespace qpesim {

enum class Algorithm { Kitaev, Iterative, Iqft, IqftModified, Acp, AcpModified };

// Measured estimates of cos/sin of the k-th doubled phase 2*pi*phase_k.
struct KitaevSample {
  int k = 1;
  double c_hat = 0.0;
  double s_hat = 0.0;
  std::uint64_t shots = 0;
};

struct PhaseEstimate {
  double value = 0.0;                 // in [0,1); equals bits.value()
  PhaseFraction bits;                 // rounded to the requested n bits
  std::vector<double> per_k;          // raw per-k estimates (Kitaev only)
  std::vector<double> stderr_per_k;   // standard error of each per-k estimate
};

// Full-quadrant angle of (c_hat, s_hat) as a fraction of a turn, in [0,1).
// atan2 keeps phase_k and -phase_k distinguishable, which a bare arctan of
// the ratio cannot.
double kitaev_point_estimate(const KitaevSample& sample);

// Inverts the interferometry laws: c_hat = 2*freq(0|cos) - 1 and
// s_hat = 1 - 2*freq(0|sin), both clamped into [-1, 1].
KitaevSample kitaev_estimate_from_counts(const ShotHistogram& cos_hist,
                                         const ShotHistogram& sin_hist, int k);

// Binomial standard error of the point estimate, propagated through atan2.
double kitaev_stderr(const KitaevSample& sample);

// Reconstructs n phase bits from estimates of {2^{k-1}*phase mod 1} for
// k = 1..m: rho_m = est_m; walking k down, rho_k is whichever of
// (rho_{k+1}+b)/2 lies circularly closest to est_k (a gap beyond a quarter
// turn raises InconsistentEstimateError, which the halving geometry makes
// unreachable for well-formed inputs but is kept as a guard); the result
// is the first n bits of rho_1 rounded to m bits, half-step ties toward
// the smaller fraction.
PhaseFraction kitaev_stitch_bits(const std::vector<double>& per_k_estimates, int n);

// Argmax decoding of a readout histogram into x1..xn. Count ties break
// toward the lexicographically smallest key. `order` says how keys map to
// phase bits: Iterative keys hold bits in reverse (clbit 0 is x_n); the
// QFT and constant-precision families store x_{i+1} at key index i, with
// any guard-bit suffix ignored. Kitaev histograms are composite and decode
// through stitching instead.
PhaseEstimate decode_histogram(const ShotHistogram& hist, int n, Algorithm order);

struct DigitAccuracy {
  std::vector<double> per_digit;
  double mean = 0.0;
};

// Per-position agreement frequencies over (true, decoded) pairs.
DigitAccuracy digit_accuracy(
    const std::vector<std::pair<PhaseFraction, PhaseFraction>>& trials);

}  // namespace qpesim
