#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpesim {

// State too large to simulate (qubit count above the supported ceiling).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Circuit does not match the ancilla-removal pattern. Callers must be able
// to distinguish "rewritten" from "left alone", so this is never swallowed.
class RewriteError : public std::runtime_error {
 public:
  explicit RewriteError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed CLI/config text. `position` is the byte offset of the first
// offending character in the input string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

// Successive per-k phase estimates disagree beyond a quarter turn while
// stitching. Carries the offending k.
class InconsistentEstimateError : public std::runtime_error {
 public:
  InconsistentEstimateError(const std::string& what, int k)
      : std::runtime_error(what + " (k=" + std::to_string(k) + ")"), k(k) {}
  int k;
};

// Both the cosine and sine estimates are zero; the sample carries no
// directional information and atan2 is undefined.
class DegenerateSampleError : public std::runtime_error {
 public:
  explicit DegenerateSampleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qpesim
