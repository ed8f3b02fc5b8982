#pragma once

#include <stdexcept>
#include <string>

namespace revtri {

/// Invalid caller input: dimension mismatch, out-of-range parameter,
/// malformed instance file.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input that is well-formed but degenerate for the requested operation
/// (zero vector where a norm is divided by, rank-deficient frame).
class DegenerateInputError : public InputError {
 public:
  explicit DegenerateInputError(const std::string& what) : InputError(what) {}
};

}  // namespace revtri
