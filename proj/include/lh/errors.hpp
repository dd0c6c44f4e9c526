#pragma once

#include <stdexcept>
#include <string>

namespace lh {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The argument of formal_integral is not the total derivative of any
/// element of the ring.
class NotExactDerivative : public Error {
 public:
  explicit NotExactDerivative(const std::string& what, int step = -1)
      : Error(what), step_(step) {}
  /// Recursion step that failed, or -1 outside of Lenard generation.
  int step() const { return step_; }

 private:
  int step_;
};

class MissingJetValue : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position, std::string expected)
      : Error(what + " at position " + std::to_string(position) +
              (expected.empty() ? std::string() : " (expected " + expected + ")")),
        position_(position),
        expected_(std::move(expected)) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

class SeedMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised while evaluating a compiled vector field.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class SingularMassMatrix : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

class StepSizeUnderflow : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UnknownMonitor : public Error {
 public:
  using Error::Error;
};

}  // namespace lh
