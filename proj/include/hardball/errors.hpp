#pragma once

#include <stdexcept>
#include <string>

namespace hardball {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point lies outside the closed box.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// LP iteration cap, Newton failure, degenerate gradients and similar.
class NumericError : public Error {
 public:
  using Error::Error;
};

class DegenerateGradientError : public NumericError {
 public:
  using NumericError::NumericError;
};

class IterationCapError : public NumericError {
 public:
  using NumericError::NumericError;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class NonUniquenessError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// Neither or both Farkas alternatives cleared their thresholds.
class AmbiguityError : public Error {
 public:
  AmbiguityError(double ascent_margin, double balance_residual);

  double ascent_margin() const noexcept { return ascent_margin_; }
  double balance_residual() const noexcept { return balance_residual_; }

 private:
  double ascent_margin_;
  double balance_residual_;
};

}  // namespace hardball
