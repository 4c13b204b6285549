#pragma once

#include <stdexcept>
#include <string>

namespace dcurv {

// Invalid user input: grid parameters, config keys, preset names.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Metric that is singular somewhere on the grid (e.g. graphene with f(x) >= 1).
class DegeneracyError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// NaN/Inf produced inside a numerical routine.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense oracle asked to build a matrix above its hard size limit.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Refined reference run whose cost exceeds the configured budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Krylov solve that did not reach its tolerance inside maxit iterations.
class KrylovFailure : public std::runtime_error {
 public:
  KrylovFailure(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

}  // namespace dcurv
