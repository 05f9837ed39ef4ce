#pragma once

#include <stdexcept>
#include <string>

namespace glhs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of the mathematical function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidBracket : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Log-domain value does not fit in a double.
class Overflow : public Error {
 public:
  Overflow(const std::string& what, double log_value)
      : Error(what), log_value_(log_value) {}
  double log_value() const noexcept { return log_value_; }

 private:
  double log_value_;
};

/// Contour quadrature left an imaginary residual above its bound.
class NonRealResult : public Error {
 public:
  using Error::Error;
};

class PoleAtOrigin : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class OutOfSupport : public DomainError {
 public:
  using DomainError::DomainError;
};

class ResourceExceeded : public Error {
 public:
  using Error::Error;
};

class NumericalBlowup : public Error {
 public:
  using Error::Error;
};

}  // namespace glhs
