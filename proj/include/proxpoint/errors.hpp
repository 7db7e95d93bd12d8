#pragma once

#include <stdexcept>
#include <string>

namespace proxpoint {

// Incompatible operand dimensions.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A scalar or structural parameter is outside its admissible range.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// evaluate() was asked for a single value at a point where the operator is
// set-valued (normal cones on the boundary) or undefined (outside the domain).
struct SetValuedError : std::domain_error {
  using std::domain_error::domain_error;
};

// The operator has an empty zero set: no solution exists.
struct NoSolutionError : std::domain_error {
  using std::domain_error::domain_error;
};

// The inner solve stopped before reaching the requested tolerance.
class InnerSolveFailure : public std::runtime_error {
 public:
  InnerSolveFailure(const std::string& what, double last_residual, int iterations)
      : std::runtime_error(what), last_residual_(last_residual), iterations_(iterations) {}

  double last_residual() const { return last_residual_; }
  int iterations() const { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

// An iterate left the representable range (NaN/Inf).
class NonFiniteIterate : public std::runtime_error {
 public:
  NonFiniteIterate(const std::string& what, long long n)
      : std::runtime_error(what), n_(n) {}

  long long iteration() const { return n_; }

 private:
  long long n_;
};

// Config-file problem, annotated with the offending line when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  explicit ConfigError(const std::string& message)
      : std::runtime_error(message), line_(0) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace proxpoint
