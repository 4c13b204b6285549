#include <doctest.h>

#include <numbers>

#include "dcurv/errors.hpp"
#include "dcurv/pml.hpp"
#include "support.hpp"

using namespace dcurv;

TEST_CASE("profile vanishes in the physical region") {
  for (int t = 1; t <= 6; ++t) {
    const auto type = static_cast<PmlType>(t);
    for (int trial = 0; trial < 20; ++trial) {
      const double x = test::uniform(-4.04, 4.04);
      CHECK(sigma_profile(type, 1.0, x, 4.05, 4.5, 0.01) == 0.0);
    }
  }
}

TEST_CASE("type I values") {
  CHECK(sigma_profile(PmlType::I, 1.0, 4.05, 4.05, 4.5, 0.01) == doctest::Approx(0.0));
  CHECK(sigma_profile(PmlType::I, 1.0, 4.275, 4.05, 4.5, 0.01) == doctest::Approx(0.050625));
  CHECK(sigma_profile(PmlType::I, 1.0, -4.275, 4.05, 4.5, 0.01) == doctest::Approx(0.050625));
  CHECK(sigma_profile(PmlType::II, 2.0, 4.275, 4.05, 4.5, 0.01) == doctest::Approx(2.0 * 0.225 * 0.225 * 0.225));
}

TEST_CASE("property: every type is nonnegative in the layer") {
  for (int t = 1; t <= 6; ++t) {
    const auto type = static_cast<PmlType>(t);
    for (int trial = 0; trial < 200; ++trial) {
      const double l = test::uniform(1.0, 10.0);
      const double ls = l * test::uniform(0.5, 0.95);
      const double x = test::uniform(ls, l);
      CHECK(sigma_profile(type, test::uniform(0.0, 3.0), x, ls, l, 0.01 * l) >= 0.0);
    }
  }
}

TEST_CASE("singular types are clamped at the outer boundary") {
  const double v = sigma_profile(PmlType::IV, 1.0, 4.5, 4.05, 4.5, 0.01);
  CHECK(v == doctest::Approx(1.0 / (0.01 * 0.01)));
  CHECK_THROWS(sigma_profile(PmlType::III, 1.0, 4.5, 4.05, 4.5, 0.0));
  CHECK_NOTHROW(sigma_profile(PmlType::I, 1.0, 4.5, 4.05, 4.5, 0.0));
}

TEST_CASE("stretch factors") {
  const Grid g = test::grid1(900, 4.5);
  PmlConfig off;
  for (const cplx& s : stretch_factor(off, 0, g)) CHECK(s == cplx(1.0, 0.0));

  PmlConfig on{true, PmlType::I, 1.0, 0.0, 0.1};
  const auto st = stretch_factor(on, 0, g);
  // x = -4.5 + k h with h = 0.01: node 23 sits at -4.27
  const double x = g.node(0, 23);
  CHECK(st[23].real() == doctest::Approx(1.0 + (std::abs(x) - 4.05) * (std::abs(x) - 4.05)));
  CHECK(st[23].imag() == 0.0);
  for (std::size_t k = 0; k < 900; ++k) {
    if (std::abs(g.node(0, k)) < 4.05) CHECK(st[k] == cplx(1.0, 0.0));
    CHECK(std::abs(st[k]) >= 1.0);
  }

  PmlConfig rot{true, PmlType::I, 1.0 / (0.225 * 0.225), std::numbers::pi / 4, 0.1};
  const double hw[] = {4.5};
  const std::size_t n[] = {20};
  const Grid gm = make_grid(1, hw, n);  // node 1 is -4.05, node 0 is -4.5
  const auto sr = stretch_factor(rot, 0, gm);
  const double sig = sigma_profile(PmlType::I, rot.sigma0, -4.5, 4.05, 4.5, 0.45);
  CHECK(std::abs(sr[0] - (1.0 + sig * cplx(std::sqrt(0.5), std::sqrt(0.5)))) < 1e-12);
}

TEST_CASE("stretch factor on a 2-D grid depends only on its axis") {
  const Grid g = test::grid2(20, 30, 2.0, 3.0);
  PmlConfig on{true, PmlType::II, 1.0, 0.3, 0.2};
  for (int axis = 0; axis < 2; ++axis) {
    const auto st = stretch_factor(on, axis, g);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto kk = g.unflatten(k);
      const double x = g.node(axis, kk[static_cast<std::size_t>(axis)]);
      const double a = g.half_width(axis);
      const double sig = sigma_profile(PmlType::II, 1.0, x, 0.8 * a, a, g.spacing(axis));
      CHECK(std::abs(st[k] - (1.0 + std::polar(1.0, 0.3) * sig)) < 1e-14);
    }
  }
}

TEST_CASE("apply_pml") {
  const std::vector<double> a{1.0, 0.3, 2.0};
  const std::vector<cplx> s{1.050625, 1.0, cplx(1.0, 1.0)};
  const auto out = apply_pml(a, s);
  CHECK(out[0].real() == doctest::Approx(0.951815).epsilon(1e-6));
  CHECK(out[1] == cplx(0.3, 0.0));
  CHECK(std::abs(out[2] - cplx(1.0, -1.0)) < 1e-15);
  CHECK_THROWS(apply_pml(a, std::vector<cplx>(2)));
}

TEST_CASE("config names and validation") {
  for (int t = 1; t <= 6; ++t) CHECK(parse_pml_type(to_string(static_cast<PmlType>(t))) == static_cast<PmlType>(t));
  CHECK_THROWS_AS(parse_pml_type("VII"), ConfigError);
  CHECK_THROWS_AS(validate(PmlConfig{true, PmlType::I, -1.0, 0.0, 0.1}), ConfigError);
  CHECK_THROWS_AS(validate(PmlConfig{true, PmlType::I, 1.0, 2.0, 0.1}), ConfigError);
  CHECK_THROWS_AS(validate(PmlConfig{true, PmlType::I, 1.0, 0.0, 1.0}), ConfigError);
  CHECK_NOTHROW(validate(PmlConfig{true, PmlType::VI, 1.0, 0.5, 0.3}));
}
