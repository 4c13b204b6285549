#include "dcurv/propagators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dcurv/errors.hpp"
#include "dcurv/kernels.hpp"
#include "dcurv/spectral.hpp"

namespace dcurv {
namespace {

using RowMajor = std::array<cplx, 16>;

RowMajor row_major(const SpinorMatrix& m) {
  RowMajor out{};
  const auto s = m.rows();
  for (Eigen::Index r = 0; r < s; ++r) {
    for (Eigen::Index c = 0; c < s; ++c) out[static_cast<std::size_t>(r * s + c)] = m(r, c);
  }
  return out;
}

std::array<cplx*, 4> comps(SpinorField& f) {
  std::array<cplx*, 4> p{};
  for (int c = 0; c < f.spinor_dim(); ++c) p[static_cast<std::size_t>(c)] = f.component(c).data();
  return p;
}

std::array<const cplx*, 16> mats(const std::vector<std::vector<cplx>>& m) {
  std::array<const cplx*, 16> p{};
  for (std::size_t i = 0; i < m.size(); ++i) p[i] = m[i].data();
  return p;
}

// Store per-node matrices as S*S node arrays.
void scatter(const std::vector<SpinorMatrix>& per_node, int s, std::vector<std::vector<cplx>>& out) {
  const std::size_t n = per_node.size();
  out.assign(static_cast<std::size_t>(s * s), std::vector<cplx>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (int r = 0; r < s; ++r) {
      for (int c = 0; c < s; ++c) out[static_cast<std::size_t>(r * s + c)][k] = per_node[k](r, c);
    }
  }
}

void copy_into(const SpinorField& src, SpinorField& dst) {
  std::copy(src.flat().begin(), src.flat().end(), dst.flat().begin());
}

// xi <- Pi F^{-1}[e^{-i dt Lambda xi} F(Pi^dagger psi)] along one axis.
void shifted(const SpinorField& psi, int axis, const StepWorkspace& ws, SpinorField& xi) {
  const auto& kt = kernels::active();
  const auto& d = ws.diag[static_cast<std::size_t>(axis)];
  const RowMajor pi_h = row_major(d.pi.adjoint());
  const RowMajor pi = row_major(d.pi);
  copy_into(psi, xi);
  auto p = comps(xi);
  kt.spinor_matvec_const(ws.s, pi_h.data(), p.data(), xi.nodes());
  // Lambda lists the +1 eigenvalues first, so each half is one contiguous block.
  const std::size_t half = static_cast<std::size_t>(ws.s / 2) * xi.nodes();
  const auto& sh = ws.shift[static_cast<std::size_t>(axis)];
  apply_axis_symbol(ws.grid, axis, xi.flat().subspan(0, half), sh[0]);
  apply_axis_symbol(ws.grid, axis, xi.flat().subspan(half, half), sh[1]);
  kt.spinor_matvec_const(ws.s, pi.data(), p.data(), xi.nodes());
}

void blend_fields(SpinorField& psi, const std::vector<cplx>& a, const SpinorField& xi) {
  const auto& kt = kernels::active();
  for (int c = 0; c < psi.spinor_dim(); ++c) {
    kt.blend(psi.component(c).data(), a.data(), xi.component(c).data(), psi.nodes());
  }
}

}  // namespace

std::string_view to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::CN:
      return "cn";
    case SchemeKind::Poly1:
      return "poly1";
    case SchemeKind::Poly2:
      return "poly2";
  }
  return "?";
}

SchemeKind parse_scheme_kind(std::string_view text) {
  for (auto k : {SchemeKind::CN, SchemeKind::Poly1, SchemeKind::Poly2}) {
    if (to_string(k) == text) return k;
  }
  throw ConfigError("unknown scheme '" + std::string(text) + "' (expected cn, poly1 or poly2)");
}

void validate(const SchemeConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ConfigError("scheme.dt must be > 0");
  if (!(cfg.T >= 0.0) || !std::isfinite(cfg.T)) throw ConfigError("scheme.T must be >= 0");
}

StepWorkspace make_workspace(const Grid& grid, const MetricModel& model, const PmlConfig& pml,
                             const SchemeConfig& scheme, const KrylovConfig& krylov) {
  validate(model, grid);
  validate(scheme);
  StepWorkspace ws(grid);
  ws.s = model.spinor_dim;
  ws.scheme = scheme.kind;
  ws.krylov = krylov;

  const auto pot = potential_field(model, grid, 0.5 * scheme.dt);
  ws.t_half = pot.t;
  ws.potential = pot.m;
  for (const auto& m : ws.potential) {
    if (m.cwiseAbs().maxCoeff() != 0.0) {
      ws.has_potential = true;
      break;
    }
  }

  ws.velocity = velocity_fields(model, grid);
  ws.connection = connection_fields(model, grid);
  for (const auto& c : ws.connection) {
    for (double v : c) ws.has_connection = ws.has_connection || v != 0.0;
  }
  const int d = grid.dim();
  for (int i = 0; i < d; ++i) {
    const auto st = stretch_factor(pml, i, grid);
    ws.vel.push_back(apply_pml(ws.velocity[static_cast<std::size_t>(i)], st));
    ws.alpha.push_back(alpha(i + 1, ws.s));
    ws.diag.push_back(diagonalize_alpha(i + 1, ws.s));
    ws.d1.push_back(derivative_symbol(grid, i, 1));
    ws.d2.push_back(derivative_symbol(grid, i, 2));
  }
  ws.scratch.assign(2, SpinorField(grid, ws.s));
  set_time_step(ws, scheme.dt);
  return ws;
}

void set_time_step(StepWorkspace& ws, double dt) {
  if (dt == 0.0 || !std::isfinite(dt)) throw std::invalid_argument("time step must be nonzero and finite");
  ws.dt = dt;
  const std::size_t n = ws.grid.size();
  const int d = ws.grid.dim();

  if (ws.has_potential) {
    std::vector<SpinorMatrix> e(n);
    for (std::size_t k = 0; k < n; ++k) e[k] = exp_minus_i(ws.potential[k], 0.5 * dt);
    scatter(e, ws.s, ws.half_exp);
  } else {
    ws.half_exp.clear();
  }

  if (ws.has_connection) {
    std::vector<SpinorMatrix> e(n);
    const double tau = 0.5 * dt;
    for (std::size_t k = 0; k < n; ++k) {
      // exp(-tau v.alpha) = exp_dirac(0, i tau v)
      std::array<cplx, 3> g{};
      for (int i = 0; i < d; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        g[ui] = cplx(0.0, tau * ws.velocity[ui][k] * ws.connection[ui][k]);
      }
      e[k] = exp_dirac(0.0, g, ws.s);
    }
    scatter(e, ws.s, ws.conn_exp);
  } else {
    ws.conn_exp.clear();
  }

  ws.shift.clear();
  ws.poly2_coef.clear();
  for (int i = 0; i < d; ++i) {
    const std::size_t ni = ws.grid.count(i);
    const double inv = 1.0 / static_cast<double>(ni);
    std::array<std::vector<cplx>, 2> sh{std::vector<cplx>(ni), std::vector<cplx>(ni)};
    for (std::size_t j = 0; j < ni; ++j) {
      const double xi = ws.grid.wavenumber(i, j);
      sh[0][j] = std::polar(inv, -dt * xi);
      sh[1][j] = std::polar(inv, dt * xi);
    }
    ws.shift.push_back(std::move(sh));
    const auto& v = ws.vel[static_cast<std::size_t>(i)];
    std::vector<cplx> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = 0.5 * v[k] * (v[k] - 1.0) * dt * dt;
    ws.poly2_coef.push_back(std::move(c));
  }
}

void half_potential_step(SpinorField& psi, const StepWorkspace& ws) {
  if (!ws.has_potential) return;
  auto p = comps(psi);
  auto m = mats(ws.half_exp);
  kernels::active().spinor_matvec(ws.s, m.data(), p.data(), psi.nodes());
}

void connection_step(SpinorField& psi, const StepWorkspace& ws) {
  if (!ws.has_connection) return;
  auto p = comps(psi);
  auto m = mats(ws.conn_exp);
  kernels::active().spinor_matvec(ws.s, m.data(), p.data(), psi.nodes());
}

void cn_operator_apply(const SpinorField& psi, SpinorField& out, const StepWorkspace& ws, int sign) {
  if (&psi == &out) throw std::invalid_argument("cn_operator_apply: input and output alias");
  const auto& kt = kernels::active();
  copy_into(psi, out);
  SpinorField& tmp = ws.scratch[0];
  const cplx coef = static_cast<double>(sign) * 0.5 * ws.dt;
  for (int i = 0; i < ws.grid.dim(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    copy_into(psi, tmp);
    apply_axis_symbol(ws.grid, i, tmp.flat(), ws.d1[ui]);
    const RowMajor a = row_major(ws.alpha[ui]);
    auto p = comps(tmp);
    kt.spinor_matvec_const(ws.s, a.data(), p.data(), tmp.nodes());
    for (int c = 0; c < ws.s; ++c) {
      kt.fma_coef(out.component(c).data(), coef, ws.vel[ui].data(), tmp.component(c).data(), tmp.nodes());
    }
  }
}

KrylovReport cn_transport_step(SpinorField& psi, const StepWorkspace& ws) {
  SpinorField b(ws.grid, ws.s);
  cn_operator_apply(psi, b, ws, -1);
  SpinorField x = psi;
  const LinearOperator op = [&ws](const SpinorField& in, SpinorField& out) { cn_operator_apply(in, out, ws, +1); };
  KrylovReport rep = gmres(op, b, x, ws.krylov);
  if (!rep.converged) {
    throw KrylovFailure("GMRES did not converge: residual " + std::to_string(rep.residual) + " after " +
                            std::to_string(rep.iterations) + " iterations",
                        rep.iterations, rep.residual);
  }
  psi = std::move(x);
  return rep;
}

void poly_axis_step(SpinorField& psi, int axis, const StepWorkspace& ws) {
  SpinorField& xi = ws.scratch[0];
  shifted(psi, axis, ws, xi);
  blend_fields(psi, ws.vel[static_cast<std::size_t>(axis)], xi);
}

void poly_axis_step2(SpinorField& psi, int axis, const StepWorkspace& ws) {
  const auto ua = static_cast<std::size_t>(axis);
  SpinorField& xi = ws.scratch[0];
  SpinorField& corr = ws.scratch[1];
  shifted(psi, axis, ws, xi);
  copy_into(xi, corr);
  apply_axis_symbol(ws.grid, axis, corr.flat(), ws.d2[ua]);
  blend_fields(psi, ws.vel[ua], xi);
  const auto& kt = kernels::active();
  for (int c = 0; c < ws.s; ++c) {
    kt.fma_coef(psi.component(c).data(), 1.0, ws.poly2_coef[ua].data(), corr.component(c).data(), psi.nodes());
  }
}

StepReport strang_step(SpinorField& psi, const StepWorkspace& ws) {
  if (psi.grid() != ws.grid || psi.spinor_dim() != ws.s) throw std::invalid_argument("strang_step: shape mismatch");
  StepReport rep;
  half_potential_step(psi, ws);
  connection_step(psi, ws);
  switch (ws.scheme) {
    case SchemeKind::CN: {
      const auto k = cn_transport_step(psi, ws);
      rep.krylov_iterations = k.iterations;
      rep.krylov_residual = k.residual;
      break;
    }
    case SchemeKind::Poly1:
      for (int i = 0; i < ws.grid.dim(); ++i) poly_axis_step(psi, i, ws);
      break;
    case SchemeKind::Poly2:
      for (int i = 0; i < ws.grid.dim(); ++i) poly_axis_step2(psi, i, ws);
      break;
  }
  connection_step(psi, ws);
  half_potential_step(psi, ws);
  return rep;
}

}  // namespace dcurv
