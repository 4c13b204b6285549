#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dcurv/config.hpp"
#include "dcurv/grid.hpp"

namespace dcurv {

struct DiagnosticsRecord {
  long step = 0;
  double t = 0.0;
  double l2 = 0.0;
  double l2_gamma = 0.0;
  int krylov_iters = -1;  // -1: explicit scheme or initial record
};

enum class RunStatus { Completed, KrylovFailure, NumericalFailure };

struct RunResult {
  SpinorField final_state;
  std::vector<DiagnosticsRecord> diagnostics;
  RunStatus status = RunStatus::Completed;
  long last_good_step = 0;
  std::string message;
};

// Called with (step, t, psi) on every stride-th step and on the last good step.
using SnapshotCallback = std::function<void(long, double, const SpinorField&)>;

SpinorField initial_condition(const IcSpec& spec, const Grid& grid, int spinor_dim);

// ceil(T / dt) with a relative guard against T/dt landing just above an integer.
long step_count(double T, double dt);

RunResult run_simulation(const RunConfig& cfg, const SnapshotCallback& on_snapshot = {});

// |psi_0|^2 + ... + |psi_{S-1}|^2 per node.
std::vector<double> density(const SpinorField& psi);

}  // namespace dcurv
