#pragma once

#include <functional>
#include <vector>

#include "dcurv/grid.hpp"

namespace dcurv {

struct KrylovConfig {
  double tol = 1e-10;
  int restart = 30;
  int maxit = 200;

  bool operator==(const KrylovConfig&) const = default;
};

void validate(const KrylovConfig& cfg);

struct KrylovReport {
  int iterations = 0;   // operator applications inside Arnoldi cycles
  double residual = 0;  // final ||b - A x|| / ||b||
  bool converged = false;
  std::vector<double> history;  // relative residual estimate after each iteration
};

// out <- A(in). `out` is preallocated with the shape of `in`.
using LinearOperator = std::function<void(const SpinorField& in, SpinorField& out)>;

// Restarted GMRES with modified Gram-Schmidt (one extra pass when the first
// leaves a component above 1e-8) and Givens rotations. `x` carries the
// initial guess in and the solution out. Throws NumericalError if the
// operator produces a non-finite value.
KrylovReport gmres(const LinearOperator& apply, const SpinorField& b, SpinorField& x, const KrylovConfig& cfg);

}  // namespace dcurv
