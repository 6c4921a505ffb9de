#pragma once

#include <stdexcept>
#include <string>

namespace gmarg {

/// Bad input: dimension mismatch, out-of-range parameter, malformed polynomial.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds a fixed implementation limit (Hermite order, expansion size, quadrature dimension).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |epsilon| lies outside the admissible interval [-1/K, 1/K].
class ValidityError : public std::runtime_error {
 public:
  ValidityError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

/// A numerical precondition checked at run time did not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gmarg
