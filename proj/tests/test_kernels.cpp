#include <doctest.h>

#include <cstdlib>
#include <string_view>
#include <vector>

#include "dcurv/kernels.hpp"
#include "support.hpp"

using namespace dcurv;
namespace k = dcurv::kernels;

namespace {

std::vector<cplx> rand_vec(std::size_t n) {
  std::vector<cplx> v(n);
  for (auto& z : v) z = test::cuniform();
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Reference loops written independently of either table.
void naive_matvec(int s, const std::vector<std::vector<cplx>>& mat, std::vector<std::vector<cplx>>& psi) {
  const std::size_t n = psi[0].size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<cplx> out(static_cast<std::size_t>(s));
    for (int r = 0; r < s; ++r)
      for (int c = 0; c < s; ++c) out[r] += mat[r * s + c][i] * psi[c][i];
    for (int r = 0; r < s; ++r) psi[r][i] = out[r];
  }
}

const std::size_t kLengths[] = {0, 1, 2, 3, 7, 64, 1001};

void check_table(const k::KernelTable& t) {
  for (int s : {2, 4}) {
    for (std::size_t n : kLengths) {
      std::vector<std::vector<cplx>> mat(s * s), psi(s);
      for (auto& m : mat) m = rand_vec(n);
      for (auto& p : psi) p = rand_vec(n);
      auto ref = psi;
      naive_matvec(s, mat, ref);
      std::vector<const cplx*> mp;
      std::vector<cplx*> pp;
      for (auto& m : mat) mp.push_back(m.data());
      for (auto& p : psi) pp.push_back(p.data());
      t.spinor_matvec(s, mp.data(), pp.data(), n);
      for (int r = 0; r < s; ++r) CHECK(max_diff(psi[r], ref[r]) < 1e-14);

      std::vector<cplx> m1 = rand_vec(static_cast<std::size_t>(s * s));
      std::vector<std::vector<cplx>> mc(s * s, std::vector<cplx>(n));
      for (int e = 0; e < s * s; ++e) std::fill(mc[e].begin(), mc[e].end(), m1[e]);
      auto ref2 = psi;
      naive_matvec(s, mc, ref2);
      t.spinor_matvec_const(s, m1.data(), pp.data(), n);
      for (int r = 0; r < s; ++r) CHECK(max_diff(psi[r], ref2[r]) < 1e-14);
    }
  }
  for (std::size_t n : kLengths) {
    const auto x = rand_vec(n), coef = rand_vec(n), y0 = rand_vec(n);
    const cplx alpha(0.7, -0.2);
    std::vector<double> w(n);
    for (auto& v : w) v = test::uniform(0.0, 2.0);

    auto y = y0;
    t.mul(y.data(), x.data(), n);
    std::vector<cplx> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = y0[i] * x[i];
    CHECK(max_diff(y, e) < 1e-15);

    y = y0;
    t.scale(y.data(), alpha, n);
    for (std::size_t i = 0; i < n; ++i) e[i] = y0[i] * alpha;
    CHECK(max_diff(y, e) < 1e-15);

    y = y0;
    t.axpy(y.data(), alpha, x.data(), n);
    for (std::size_t i = 0; i < n; ++i) e[i] = y0[i] + alpha * x[i];
    CHECK(max_diff(y, e) < 1e-15);

    y = y0;
    t.fma_coef(y.data(), alpha, coef.data(), x.data(), n);
    for (std::size_t i = 0; i < n; ++i) e[i] = y0[i] + alpha * coef[i] * x[i];
    CHECK(max_diff(y, e) < 1e-14);

    y = y0;
    t.blend(y.data(), coef.data(), x.data(), n);
    for (std::size_t i = 0; i < n; ++i) e[i] = coef[i] * x[i] + (1.0 - coef[i]) * y0[i];
    CHECK(max_diff(y, e) < 1e-14);

    double n2 = 0.0, wn2 = 0.0;
    cplx d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      n2 += std::norm(x[i]);
      wn2 += w[i] * std::norm(x[i]);
      d += std::conj(x[i]) * y0[i];
    }
    CHECK(std::abs(t.norm2(x.data(), n) - n2) <= 1e-13 * (1.0 + n2));
    CHECK(std::abs(t.weighted_norm2(w.data(), x.data(), n) - wn2) <= 1e-13 * (1.0 + wn2));
    CHECK(std::abs(t.dot(x.data(), y0.data(), n) - d) <= 1e-13 * (1.0 + static_cast<double>(n)));
  }
}

}  // namespace

TEST_CASE("environment override pins the scalar table") {
  const char* env = std::getenv("DCURV_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") {
    CHECK(k::active().isa == k::Isa::Scalar);
  } else if (k::avx2_table() != nullptr) {
    CHECK(k::active().isa == k::Isa::Avx2);
  }
}

TEST_CASE("scalar table matches reference loops") {
  CHECK(k::scalar_table().isa == k::Isa::Scalar);
  check_table(k::scalar_table());
}

TEST_CASE("AVX2 table matches reference loops") {
  const k::KernelTable* t = k::avx2_table();
  if (t == nullptr) {
    MESSAGE("AVX2 variant unavailable on this host");
    return;
  }
  CHECK(t->isa == k::Isa::Avx2);
  check_table(*t);
}

TEST_CASE("scalar and AVX2 tables agree on random inputs") {
  const k::KernelTable* v = k::avx2_table();
  if (v == nullptr) return;
  const auto& s = k::scalar_table();
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(test::rng()() % 300);
    const auto x = rand_vec(n), coef = rand_vec(n), y0 = rand_vec(n);
    const cplx alpha = test::cuniform();
    auto ya = y0, yb = y0;
    s.fma_coef(ya.data(), alpha, coef.data(), x.data(), n);
    v->fma_coef(yb.data(), alpha, coef.data(), x.data(), n);
    CHECK(max_diff(ya, yb) < 1e-14);
    ya = y0;
    yb = y0;
    s.blend(ya.data(), coef.data(), x.data(), n);
    v->blend(yb.data(), coef.data(), x.data(), n);
    CHECK(max_diff(ya, yb) < 1e-14);
    CHECK(std::abs(s.dot(x.data(), y0.data(), n) - v->dot(x.data(), y0.data(), n)) < 1e-12);
    CHECK(std::abs(s.norm2(x.data(), n) - v->norm2(x.data(), n)) < 1e-12);
  }
}

TEST_CASE("select switches the active table") {
  const k::Isa before = k::active().isa;
  k::select(k::Isa::Scalar);
  CHECK(k::active().isa == k::Isa::Scalar);
  if (k::avx2_table() != nullptr) {
    k::select(k::Isa::Avx2);
    CHECK(k::active().isa == k::Isa::Avx2);
  } else {
    CHECK_THROWS_AS(k::select(k::Isa::Avx2), std::invalid_argument);
  }
  k::select(before);
}
