#include "dcurv/simulation.hpp"

#include <cmath>
#include <numbers>

#include "dcurv/errors.hpp"
#include "dcurv/io.hpp"
#include "dcurv/propagators.hpp"

namespace dcurv {

SpinorField initial_condition(const IcSpec& spec, const Grid& grid, int spinor_dim) {
  SpinorField psi(grid, spinor_dim);
  switch (spec.kind) {
    case IcKind::GaussianWavepacket:
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto x = grid.coords(k);
        const double r2 = x[0] * x[0] + x[1] * x[1];
        const double phase = spec.k0[0] * x[0] + (grid.dim() == 2 ? spec.k0[1] * x[1] : 0.0);
        psi(0, k) = std::polar(std::exp(-0.5 * r2), phase);
      }
      break;
    case IcKind::GraphenePair: {
      const double norm = spec.beta / std::sqrt(4.0 * std::numbers::pi);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto x = grid.coords(k);
        const double g = norm * std::exp(-0.5 * spec.beta * (x[0] * x[0] + x[1] * x[1]));
        psi(0, k) = g;
        psi(1, k) = cplx(0.0, g);
      }
      break;
    }
    case IcKind::Table:
      psi = read_snapshot(spec.file, grid, spinor_dim);
      break;
  }
  return psi;
}

long step_count(double T, double dt) {
  if (!(dt > 0.0)) throw ConfigError("scheme.dt must be > 0");
  if (T <= 0.0) return 0;
  const double r = T / dt;
  return std::max(1L, static_cast<long>(std::ceil(r - 1e-9 * r)));
}

RunResult run_simulation(const RunConfig& cfg, const SnapshotCallback& on_snapshot) {
  validate(cfg);
  const Grid grid = build_grid(cfg);
  SpinorField psi = initial_condition(cfg.ic, grid, cfg.metric.spinor_dim);
  StepWorkspace ws = make_workspace(grid, cfg.metric, cfg.pml, cfg.scheme, cfg.krylov);
  const auto weight = gamma_weight(cfg.metric, grid);

  RunResult res{psi, {}, RunStatus::Completed, 0, {}};
  auto record = [&](long step, double t, int iters) {
    res.diagnostics.push_back({step, t, l2_norm(psi), weighted_l2_norm(psi, weight), iters});
  };

  const double dt = cfg.scheme.dt;
  const double T = cfg.scheme.T;
  const long n = step_count(T, dt);
  const int stride = cfg.output.stride;
  record(0, 0.0, -1);
  if (on_snapshot && stride > 0) on_snapshot(0, 0.0, psi);
  long last_snap = stride > 0 ? 0 : -1;

  SpinorField prev = psi;
  double t = 0.0;
  for (long step = 1; step <= n; ++step) {
    const double h = step == n ? T - static_cast<double>(n - 1) * dt : dt;
    if (std::abs(h - ws.dt) > 1e-12 * dt) set_time_step(ws, h);
    std::copy(psi.flat().begin(), psi.flat().end(), prev.flat().begin());
    StepReport rep;
    try {
      rep = strang_step(psi, ws);
    } catch (const KrylovFailure& e) {
      psi = prev;
      res.status = RunStatus::KrylovFailure;
      res.message = "step " + std::to_string(step) + ": " + e.what();
      break;
    } catch (const NumericalError& e) {
      psi = prev;
      res.status = RunStatus::NumericalFailure;
      res.message = "step " + std::to_string(step) + ": " + e.what();
      break;
    }
    if (!psi.all_finite()) {
      psi = prev;
      res.status = RunStatus::NumericalFailure;
      res.message = "step " + std::to_string(step) + ": non-finite values in the solution";
      break;
    }
    t = step == n ? T : static_cast<double>(step) * dt;
    res.last_good_step = step;
    record(step, t, rep.krylov_iterations);
    if (on_snapshot && stride > 0 && step % stride == 0) {
      on_snapshot(step, t, psi);
      last_snap = step;
    }
  }
  if (on_snapshot && last_snap != res.last_good_step) on_snapshot(res.last_good_step, t, psi);
  res.final_state = std::move(psi);
  return res;
}

std::vector<double> density(const SpinorField& psi) {
  std::vector<double> rho(psi.nodes(), 0.0);
  for (int c = 0; c < psi.spinor_dim(); ++c) {
    const auto comp = psi.component(c);
    for (std::size_t k = 0; k < rho.size(); ++k) rho[k] += std::norm(comp[k]);
  }
  return rho;
}

}  // namespace dcurv
