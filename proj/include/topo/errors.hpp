#pragma once

#include <stdexcept>
#include <string>

namespace topo {

// Base of every error the library raises. The C API maps each subclass to
// one status code, the CLI maps them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Experiment configuration that is malformed or semantically invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Request for a claim the source withholds (ratio monotonicity for k = -1).
class UnsupportedCurvature : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Geodesic boundary-value solve did not converge within its budget.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double best_value, double residual)
      : Error(what), best_value_(best_value), residual_(residual) {}

  double best_value() const { return best_value_; }
  double residual() const { return residual_; }

 private:
  double best_value_;
  double residual_;
};

}  // namespace topo
