#pragma once

#include <stdexcept>
#include <string>

namespace diffrakt {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied an argument outside the documented domain (bad parameters,
// invalid window, failed kernel validation). Maps to CLI exit code 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A numerical procedure could not reach its accuracy target. Maps to CLI exit
// code 3.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public NumericFailure {
 public:
  QuadratureError(const std::string& what, double partial, double error_estimate)
      : NumericFailure(what), partial_(partial), error_estimate_(error_estimate) {}

  double partial() const { return partial_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double partial_;
  double error_estimate_;
};

// Nyström discretisation produced eigenvalues outside [0, 1] beyond tolerance.
class DiscretizationError : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

// Truncated series/spectrum does not capture enough mass for the requested
// window.
class TruncationError : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

}  // namespace diffrakt
