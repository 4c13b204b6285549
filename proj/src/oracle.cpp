#include "dcurv/oracle.hpp"

#include <Eigen/LU>
#include <cmath>
#include <string>

#include "dcurv/errors.hpp"
#include "dcurv/spectral.hpp"

namespace dcurv {

Eigen::VectorXcd flatten(const SpinorField& psi) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.flat().size()));
  for (std::size_t i = 0; i < psi.flat().size(); ++i) v(static_cast<Eigen::Index>(i)) = psi.flat()[i];
  return v;
}

void unflatten_into(const Eigen::VectorXcd& v, SpinorField& psi) {
  if (static_cast<std::size_t>(v.size()) != psi.flat().size()) throw std::invalid_argument("unflatten: size mismatch");
  for (std::size_t i = 0; i < psi.flat().size(); ++i) psi.flat()[i] = v(static_cast<Eigen::Index>(i));
}

Eigen::MatrixXcd build_dense_G(const StepWorkspace& ws, double dt) {
  const Grid& g = ws.grid;
  const std::size_t n = g.size();
  const std::size_t total = static_cast<std::size_t>(ws.s) * n;
  if (total > kDenseLimit) {
    throw SizeGuardError("dense G needs " + std::to_string(total) + " unknowns, limit is " +
                         std::to_string(kDenseLimit));
  }
  const auto dim = static_cast<Eigen::Index>(total);
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(dim, dim);
  for (int i = 0; i < g.dim(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const std::size_t ni = g.count(i);
    const Eigen::MatrixXcd A = dense_diff_matrix(ni, g.half_width(i));
    const std::size_t stride = g.stride(i);
    const SpinorMatrix& al = ws.alpha[ui];
    for (std::size_t k = 0; k < n; ++k) {
      const auto kk = g.unflatten(k);
      const std::size_t ki = kk[ui];
      const std::size_t base = k - ki * stride;
      const cplx w = 0.5 * dt * ws.vel[ui][k];
      for (std::size_t kp = 0; kp < ni; ++kp) {
        const cplx wa = w * A(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(kp));
        if (wa == cplx{}) continue;
        const std::size_t col = base + kp * stride;
        for (int r = 0; r < ws.s; ++r) {
          for (int c = 0; c < ws.s; ++c) {
            const cplx e = al(r, c);
            if (e == cplx{}) continue;
            G(static_cast<Eigen::Index>(static_cast<std::size_t>(r) * n + k),
              static_cast<Eigen::Index>(static_cast<std::size_t>(c) * n + col)) += wa * e;
          }
        }
      }
    }
  }
  return G;
}

SpinorField dense_cn_step(const SpinorField& psi, const StepWorkspace& ws, double dt) {
  const Eigen::MatrixXcd G = build_dense_G(ws, dt);
  const auto dim = G.rows();
  const Eigen::MatrixXcd Gt = 2.0 * Eigen::MatrixXcd::Identity(dim, dim) - G;
  const Eigen::VectorXcd b = Gt * flatten(psi);
  const Eigen::VectorXcd x = G.partialPivLu().solve(b);
  if (!x.allFinite()) throw NumericalError("dense CN solve produced non-finite values");
  SpinorField out(psi.grid(), psi.spinor_dim());
  unflatten_into(x, out);
  return out;
}

SpinorField dense_strang_step(const SpinorField& psi, const StepWorkspace& ws) {
  SpinorField out = psi;
  half_potential_step(out, ws);
  connection_step(out, ws);
  out = dense_cn_step(out, ws, ws.dt);
  connection_step(out, ws);
  half_potential_step(out, ws);
  return out;
}

RunConfig refined_config(const RunConfig& cfg, std::size_t space, std::size_t time) {
  if (space == 0 || time == 0) throw ConfigError("refinement factors must be >= 1");
  RunConfig r = cfg;
  for (int i = 0; i < r.grid.d; ++i) r.grid.n[static_cast<std::size_t>(i)] *= space;
  r.scheme.dt /= static_cast<double>(time);
  return r;
}

RunResult reference_run(const RunConfig& cfg, std::size_t space, std::size_t time, double budget) {
  const RunConfig r = refined_config(cfg, space, time);
  double nodes = 1.0;
  for (int i = 0; i < r.grid.d; ++i) nodes *= static_cast<double>(r.grid.n[static_cast<std::size_t>(i)]);
  const double cost = nodes * static_cast<double>(step_count(r.scheme.T, r.scheme.dt));
  if (cost > budget) {
    throw BudgetError("reference run needs " + std::to_string(cost) + " node-steps, budget is " +
                      std::to_string(budget));
  }
  return run_simulation(r);
}

RunResult reference_run(const RunConfig& cfg, std::size_t refine, double budget) {
  return reference_run(cfg, refine, refine * refine, budget);
}

SpinorField restrict_to(const SpinorField& fine, const Grid& coarse) {
  const Grid& f = fine.grid();
  if (f.dim() != coarse.dim()) throw std::invalid_argument("restrict_to: dimension mismatch");
  std::array<std::size_t, 2> factor{1, 1};
  for (int i = 0; i < f.dim(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (std::abs(f.half_width(i) - coarse.half_width(i)) > 1e-12 * coarse.half_width(i) ||
        f.count(i) % coarse.count(i) != 0) {
      throw std::invalid_argument("restrict_to: grids do not nest");
    }
    factor[ui] = f.count(i) / coarse.count(i);
  }
  SpinorField out(coarse, fine.spinor_dim());
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    const auto kk = coarse.unflatten(k);
    std::size_t fk = kk[0] * factor[0];
    if (f.dim() == 2) fk = fk * f.count(1) + kk[1] * factor[1];
    for (int c = 0; c < fine.spinor_dim(); ++c) out(c, k) = fine(c, fk);
  }
  return out;
}

}  // namespace dcurv
