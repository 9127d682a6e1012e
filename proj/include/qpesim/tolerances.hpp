#pragma once

// Central table of numeric tolerances. Structural identities (unitarity,
// distribution equivalence, amplitude comparisons) are held to 1e-10;
// statistical checks use explicit sigma bands at the call site.
namespace qpesim::tol {

inline constexpr double structural = 1e-10;

// Probability assertions on branch-enumerated distributions. Slightly looser
// than `structural` because branch probabilities accumulate products of
// amplitude magnitudes.
inline constexpr double probability = 1e-9;

// Scalar round trips (atan2 recovery, phase arithmetic).
inline constexpr double point = 1e-12;

// Measurement branches below this weight are dead and not enumerated.
// Sits an order of magnitude above the norm drift a few dozen double
// precision gate applications accumulate (~1e-14), so drift never
// materializes as a phantom outcome, and well below the smallest genuine
// branch any enumerated circuit produces.
inline constexpr double branch_cutoff = 1e-13;

// A Kitaev sample with |c| + |s| under this is directionless.
inline constexpr double degenerate = 1e-12;

}  // namespace qpesim::tol
