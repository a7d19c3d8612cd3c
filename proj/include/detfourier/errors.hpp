#pragma once

#include <stdexcept>
#include <string>

namespace detfourier {

// Input violates a documented precondition (bad dimension, non-prime N, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical computation cannot be completed reliably: rank-deficient
// least-squares systems, unstable floor boundaries, and similar.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace detfourier
