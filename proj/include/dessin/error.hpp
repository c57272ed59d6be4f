#pragma once

#include <stdexcept>
#include <string>

namespace dessin {

/// Malformed input: bad grammar, violated preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Input is well-formed but outside the supported range (degree or size caps).
class Unsupported : public std::runtime_error {
 public:
  explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

/// A computation could not be completed (non-convergence, elimination blowup).
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dessin
