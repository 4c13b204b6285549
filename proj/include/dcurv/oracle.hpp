#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "dcurv/config.hpp"
#include "dcurv/propagators.hpp"
#include "dcurv/simulation.hpp"

namespace dcurv {

// Largest S * nodes the dense oracles accept.
inline constexpr std::size_t kDenseLimit = 16384;

// G = I + dt/2 sum_i diag(a^i/S^i) (alpha^i (x) A^i along axis i), acting on
// the flattened component-major field. Throws SizeGuardError.
Eigen::MatrixXcd build_dense_G(const StepWorkspace& ws, double dt);

// Solves G psi* = (2I - G) psi by dense LU.
SpinorField dense_cn_step(const SpinorField& psi, const StepWorkspace& ws, double dt);

// Strang step with the transport solved densely (CN) regardless of ws.scheme.
SpinorField dense_strang_step(const SpinorField& psi, const StepWorkspace& ws);

Eigen::VectorXcd flatten(const SpinorField& psi);
void unflatten_into(const Eigen::VectorXcd& v, SpinorField& psi);

// Node-steps (nodes x steps) a reference run may spend.
inline constexpr double kDefaultBudget = 2e9;

// cfg with N multiplied by `space` per axis and dt divided by `time`.
RunConfig refined_config(const RunConfig& cfg, std::size_t space, std::size_t time);

// Runs refined_config(cfg, space, time); throws BudgetError above `budget`.
RunResult reference_run(const RunConfig& cfg, std::size_t space, std::size_t time, double budget = kDefaultBudget);
// h / refine and dt / refine^2.
RunResult reference_run(const RunConfig& cfg, std::size_t refine, double budget = kDefaultBudget);

// Index subsampling of a field on a grid refined by an integer factor.
SpinorField restrict_to(const SpinorField& fine, const Grid& coarse);

}  // namespace dcurv
