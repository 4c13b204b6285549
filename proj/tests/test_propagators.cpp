#include <doctest.h>

#include "dcurv/errors.hpp"
#include "dcurv/kernels.hpp"
#include "dcurv/presets.hpp"
#include "dcurv/propagators.hpp"
#include "dcurv/simulation.hpp"
#include "support.hpp"

using namespace dcurv;

namespace {

MetricModel flat_model(double mass = 0.0) {
  MetricModel m;
  m.mass = mass;
  return m;
}

MetricModel exp1_model() {
  MetricModel m;
  m.kind = MetricKind::StaticDiagonal1D;
  m.mass = 1.0;
  m.phi = Profile::parse("gaussian 1 0.005");
  m.psi = Profile::parse("gaussian 1 0.01");
  return m;
}

StepWorkspace workspace(const Grid& g, const MetricModel& m, SchemeKind k, double dt, PmlConfig pml = {}) {
  return make_workspace(g, m, pml, SchemeConfig{k, dt, 1.0}, KrylovConfig{});
}

void set_velocity(StepWorkspace& ws, int axis, cplx v) {
  std::fill(ws.vel[static_cast<std::size_t>(axis)].begin(), ws.vel[static_cast<std::size_t>(axis)].end(), v);
  set_time_step(ws, ws.dt);
}

// Plane wave u e^{i xi x} in 1-D.
SpinorField plane_wave(const Grid& g, const Eigen::Vector2cd& u, double xi) {
  SpinorField f(g, 2);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const cplx e = std::polar(1.0, xi * g.node(0, k));
    f(0, k) = u(0) * e;
    f(1, k) = u(1) * e;
  }
  return f;
}

}  // namespace

TEST_CASE("half potential step") {
  const Grid g = test::grid1(16);
  const SpinorField psi = test::random_field(g, 2);

  auto ws0 = workspace(g, flat_model(0.0), SchemeKind::CN, 0.1);
  SpinorField a = psi;
  half_potential_step(a, ws0);
  CHECK(test::max_abs_diff(a, psi) == 0.0);

  auto ws = workspace(g, flat_model(1.0), SchemeKind::CN, 0.1);
  SpinorField b = psi;
  half_potential_step(b, ws);
  for (std::size_t k = 0; k < 16; ++k) {
    CHECK(std::abs(b(0, k) - std::polar(1.0, -0.05) * psi(0, k)) < 1e-15);
    CHECK(std::abs(b(1, k) - std::polar(1.0, 0.05) * psi(1, k)) < 1e-15);
  }

  const RunConfig e4 = preset("exp4", Scale::Ci);
  const Grid g4 = build_grid(e4);
  auto ws4 = make_workspace(g4, e4.metric, e4.pml, e4.scheme, e4.krylov);
  SpinorField c = test::random_field(g4, 2);
  const double before = l2_norm(c);
  half_potential_step(c, ws4);
  CHECK(std::abs(l2_norm(c) - before) < 1e-12 * before);
}

TEST_CASE("workspace exponentials are unitary for Hermitian potentials") {
  for (const char* name : {"exp1", "exp4", "exp5", "exp3"}) {
    const RunConfig cfg = preset(name, Scale::Ci);
    const Grid g = build_grid(cfg);
    const auto ws = make_workspace(g, cfg.metric, cfg.pml, cfg.scheme, cfg.krylov);
    if (!ws.has_potential) continue;
    const int s = ws.s;
    for (std::size_t k = 0; k < g.size(); k += 7) {
      SpinorMatrix u(s, s);
      for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c) u(r, c) = ws.half_exp[static_cast<std::size_t>(r * s + c)][k];
      CHECK((u.adjoint() * u - identity(s)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("CN operator on a plane wave") {
  const Grid g = test::grid1(32, 3.0);
  const auto ws = workspace(g, flat_model(), SchemeKind::CN, 0.2);
  const double xi = g.wavenumber(0, 5);
  Eigen::Vector2cd u(cplx(0.3, 0.1), cplx(-0.7, 0.4));
  const SpinorField psi = plane_wave(g, u, xi);
  for (int sign : {+1, -1}) {
    SpinorField out(g, 2);
    cn_operator_apply(psi, out, ws, sign);
    const Eigen::Matrix2cd M = Eigen::Matrix2cd::Identity() + cplx(0.0, sign * 0.1 * xi) * pauli(1);
    const SpinorField expect = plane_wave(g, M * u, xi);
    CHECK(test::max_abs_diff(out, expect) < 1e-12);
  }
  CHECK_THROWS(cn_operator_apply(psi, const_cast<SpinorField&>(psi), ws, 1));
}

TEST_CASE("CN operator is linear") {
  const Grid g = test::grid2(16, 12, 2.0, 3.0);
  MetricModel m;
  m.kind = MetricKind::StaticDiagonal2D;
  m.phi = Profile::parse("gaussian 0.5 0.1");
  m.psi = Profile::parse("gaussian 0.3 0.2");
  const auto ws = workspace(g, m, SchemeKind::CN, 0.05);
  const SpinorField f = test::random_field(g, 2), h = test::random_field(g, 2);
  const cplx a(1.5, -0.5);
  SpinorField comb(g, 2);
  for (std::size_t i = 0; i < comb.flat().size(); ++i) comb.flat()[i] = a * f.flat()[i] + h.flat()[i];
  SpinorField of(g, 2), oh(g, 2), oc(g, 2);
  cn_operator_apply(f, of, ws, 1);
  cn_operator_apply(h, oh, ws, 1);
  cn_operator_apply(comb, oc, ws, 1);
  for (std::size_t i = 0; i < oc.flat().size(); ++i) oc.flat()[i] -= a * of.flat()[i] + oh.flat()[i];
  CHECK(euclidean_norm(oc) < 1e-12 * euclidean_norm(comb));
}

TEST_CASE("CN transport is the per-mode Cayley factor") {
  const Grid g = test::grid1(32, 3.0);
  const auto ws = workspace(g, flat_model(), SchemeKind::CN, 0.3);
  for (std::size_t j : {1u, 4u, 9u, 20u}) {
    const double xi = g.wavenumber(0, j);
    const Eigen::Vector2cd u(cplx(1.0, 0.2), cplx(0.1, -0.5));
    SpinorField psi = plane_wave(g, u, xi);
    cn_transport_step(psi, ws);
    const Eigen::Matrix2cd A = cplx(0.0, 0.15 * xi) * pauli(1);
    const Eigen::Matrix2cd C = (Eigen::Matrix2cd::Identity() + A).inverse() * (Eigen::Matrix2cd::Identity() - A);
    CHECK(test::max_abs_diff(psi, plane_wave(g, C * u, xi)) < 1e-9);
    const Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(C);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(std::abs(es.eigenvalues()(i)) - 1.0) < 1e-14);
  }
}

TEST_CASE("flat-space CN conserves l2") {
  const Grid g = test::grid1(128, 8.0);
  auto ws = workspace(g, flat_model(1.0), SchemeKind::CN, 0.01);
  SpinorField psi = test::smooth_field(g, 2);
  const double n0 = l2_norm(psi);
  for (int n = 0; n < 100; ++n) strang_step(psi, ws);
  CHECK(std::abs(l2_norm(psi) - n0) / n0 < 100 * 1e-10);
}

TEST_CASE("poly step with zero velocity is the identity") {
  const Grid g = test::grid1(32);
  for (auto kind : {SchemeKind::Poly1, SchemeKind::Poly2}) {
    auto ws = workspace(g, flat_model(), kind, 0.1);
    set_velocity(ws, 0, 0.0);
    const SpinorField psi = test::random_field(g, 2);
    SpinorField a = psi;
    if (kind == SchemeKind::Poly1) {
      poly_axis_step(a, 0, ws);
    } else {
      poly_axis_step2(a, 0, ws);
    }
    CHECK(test::max_abs_diff(a, psi) < 1e-15);
  }
}

TEST_CASE("poly step with unit velocity translates each eigencomponent") {
  const Grid g = test::grid1(256, 10.0);
  const double dt = 0.37;
  for (int s : {2, 4}) {
    MetricModel m;
    m.spinor_dim = s;
    auto ws = workspace(g, m, SchemeKind::Poly1, dt);
    const auto& d = ws.diag[0];
    SpinorField psi(g, s);
    for (std::size_t k = 0; k < g.size(); ++k) {
      Eigen::VectorXcd phi(s);
      for (int c = 0; c < s; ++c) {
        const double x = g.node(0, k) - 0.5 * c;
        phi(c) = std::exp(-x * x) * (1.0 + 0.5 * c);
      }
      const Eigen::VectorXcd v = d.pi * phi;
      for (int c = 0; c < s; ++c) psi(c, k) = v(c);
    }
    poly_axis_step(psi, 0, ws);
    double err = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      Eigen::VectorXcd phi(s);
      for (int c = 0; c < s; ++c) {
        const double x = g.node(0, k) - 0.5 * c - d.lambda(c) * dt;
        phi(c) = std::exp(-x * x) * (1.0 + 0.5 * c);
      }
      const Eigen::VectorXcd v = d.pi * phi;
      for (int c = 0; c < s; ++c) err = std::max(err, std::abs(psi(c, k) - v(c)));
    }
    CHECK(err < 1e-12);
  }
}

TEST_CASE("scheme II is l2 non-expansive for velocities in [0, 1]") {
  const RunConfig cfg = preset("exp3", Scale::Ci);
  RunConfig small = cfg;
  small.grid.n = {48, 48};
  const Grid g = build_grid(small);
  for (auto kind : {SchemeKind::Poly1}) {
    auto ws = make_workspace(g, small.metric, small.pml, SchemeConfig{kind, 1e-2, 1.0}, KrylovConfig{});
    for (const auto& v : ws.velocity)
      for (double a : v) REQUIRE((a >= 0.0 && a <= 1.0));
    SpinorField psi = test::random_field(g, 2);
    double prev = l2_norm(psi);
    for (int n = 0; n < 30; ++n) {
      strang_step(psi, ws);
      const double now = l2_norm(psi);
      CHECK(now <= prev * (1 + 1e-12));
      prev = now;
    }
  }
}

TEST_CASE("temporal order of the polynomial schemes at constant velocity") {
  // Exact solution: each eigencomponent translated by a T.
  const Grid g = test::grid1(256, 10.0);
  const double a = 0.5, T = 0.8;
  MetricModel m;
  const auto d = diagonalize_alpha(1, 2);
  auto make_state = [&](double t) {
    SpinorField f(g, 2);
    for (std::size_t k = 0; k < g.size(); ++k) {
      Eigen::Vector2cd phi;
      for (int c = 0; c < 2; ++c) {
        const double x = g.node(0, k) - d.lambda(c) * a * t;
        phi(c) = std::exp(-0.5 * x * x) * std::polar(1.0, 1.5 * x);
      }
      const Eigen::Vector2cd v = d.pi * phi;
      f(0, k) = v(0);
      f(1, k) = v(1);
    }
    return f;
  };
  const SpinorField exact = make_state(T);
  for (auto kind : {SchemeKind::Poly1, SchemeKind::Poly2}) {
    std::vector<double> err;
    for (int steps : {20, 40, 80}) {
      auto ws = workspace(g, m, kind, T / steps);
      set_velocity(ws, 0, a);
      SpinorField psi = make_state(0.0);
      for (int n = 0; n < steps; ++n) strang_step(psi, ws);
      err.push_back(test::rel_diff(psi, exact));
    }
    const double order = std::log2(err[1] / err[2]);
    MESSAGE(to_string(kind) << " errors " << err[0] << " " << err[1] << " " << err[2] << " order " << order);
    CHECK(order >= (kind == SchemeKind::Poly1 ? 0.9 : 1.9));
  }
}

TEST_CASE("free Dirac dispersion") {
  const Grid g = test::grid1(32, 3.0);
  const double xi = g.wavenumber(0, 3), m = 1.0, E = std::sqrt(xi * xi + m * m);
  const Eigen::Matrix2cd H = xi * pauli(1) + m * pauli(3);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(H);
  const Eigen::Vector2cd u = es.eigenvectors().col(1);
  REQUIRE(std::abs(es.eigenvalues()(1) - E) < 1e-12);
  const double T = 1.0;
  std::vector<double> err;
  for (int steps : {50, 100, 200}) {
    auto ws = workspace(g, flat_model(m), SchemeKind::CN, T / steps);
    SpinorField psi = plane_wave(g, u, xi);
    for (int n = 0; n < steps; ++n) strang_step(psi, ws);
    const SpinorField exact = plane_wave(g, std::polar(1.0, -E * T) * u, xi);
    err.push_back(test::rel_diff(psi, exact));
  }
  CHECK(err[0] < 5e-3);
  CHECK(std::log2(err[1] / err[2]) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("Strang step with zero Hamiltonian is the identity") {
  const Grid g = test::grid1(32);
  for (auto kind : {SchemeKind::CN, SchemeKind::Poly1, SchemeKind::Poly2}) {
    auto ws = workspace(g, flat_model(), kind, 0.7);
    set_velocity(ws, 0, 0.0);
    const SpinorField psi = test::random_field(g, 2);
    SpinorField a = psi;
    strang_step(a, ws);
    CHECK(test::max_abs_diff(a, psi) < 1e-14);
  }
}

TEST_CASE("CN Strang steps are time reversible") {
  for (const char* name : {"exp1", "exp4", "exp5"}) {
    RunConfig cfg = preset(name, Scale::Ci);
    cfg.grid.n[0] = 128;
    const Grid g = build_grid(cfg);
    auto ws = make_workspace(g, cfg.metric, cfg.pml, cfg.scheme, cfg.krylov);
    const SpinorField psi = test::smooth_field(g, 2);
    SpinorField x = psi;
    for (int n = 0; n < 5; ++n) strang_step(x, ws);
    set_time_step(ws, -cfg.scheme.dt);
    for (int n = 0; n < 5; ++n) strang_step(x, ws);
    CHECK(test::rel_diff(x, psi) < 10 * 10 * cfg.krylov.tol);
  }
}

TEST_CASE("disabled PML leaves the velocity bit-identical") {
  const Grid g = test::grid1(64, 4.5);
  MetricModel m;
  m.kind = MetricKind::RippledGraphene1D;
  m.a0 = 0.4;
  m.k0 = 2;
  m.ell = 5;
  const auto ws = workspace(g, m, SchemeKind::CN, 0.01);
  for (std::size_t k = 0; k < 64; ++k) CHECK(ws.vel[0][k] == cplx(ws.velocity[0][k], 0.0));
  const auto wp = workspace(g, m, SchemeKind::CN, 0.01, PmlConfig{true, PmlType::I, 1.0, 0.0, 0.1});
  for (std::size_t k = 0; k < 64; ++k) {
    if (std::abs(g.node(0, k)) < 4.05) CHECK(wp.vel[0][k] == ws.vel[0][k]);
  }
}

TEST_CASE("scalar and AVX2 kernels give the same trajectory") {
  if (kernels::avx2_table() == nullptr) return;
  const kernels::Isa before = kernels::active().isa;
  for (const char* name : {"exp1", "exp3", "exp4"}) {
    RunConfig cfg = preset(name, Scale::Ci);
    if (cfg.grid.d == 2) {
      cfg.grid.n = {32, 32};
    } else {
      cfg.grid.n[0] = 256;
    }
    const Grid g = build_grid(cfg);
    const auto ws = make_workspace(g, cfg.metric, cfg.pml, cfg.scheme, cfg.krylov);
    const SpinorField psi0 = test::smooth_field(g, cfg.metric.spinor_dim);
    SpinorField a = psi0, b = psi0;
    kernels::select(kernels::Isa::Scalar);
    for (int n = 0; n < 10; ++n) strang_step(a, ws);
    kernels::select(kernels::Isa::Avx2);
    for (int n = 0; n < 10; ++n) strang_step(b, ws);
    CHECK(test::rel_diff(b, a) < 1e-11);
  }
  kernels::select(before);
}

TEST_CASE("step argument checks") {
  const auto ws = workspace(test::grid1(32), flat_model(), SchemeKind::CN, 0.1);
  SpinorField wrong(test::grid1(16), 2);
  CHECK_THROWS(strang_step(wrong, ws));
  CHECK_THROWS_AS(make_workspace(test::grid1(32), flat_model(), {}, SchemeConfig{SchemeKind::CN, -1.0, 1.0}, {}),
                  ConfigError);
  CHECK(parse_scheme_kind("poly2") == SchemeKind::Poly2);
  CHECK_THROWS_AS(parse_scheme_kind("rk4"), ConfigError);
}
