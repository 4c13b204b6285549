#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "dcurv/grid.hpp"
#include "dcurv/spinor.hpp"

namespace dcurv::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed'd1acULL);
  return gen;
}

inline double uniform(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline cplx cuniform() { return {uniform(), uniform()}; }

inline Grid grid1(std::size_t n, double a = 5.0) {
  const double hw[] = {a};
  const std::size_t c[] = {n};
  return make_grid(1, hw, c);
}

inline Grid grid2(std::size_t n0, std::size_t n1, double a0 = 5.0, double a1 = 5.0) {
  const double hw[] = {a0, a1};
  const std::size_t c[] = {n0, n1};
  return make_grid(2, hw, c);
}

inline SpinorField random_field(const Grid& g, int s) {
  SpinorField f(g, s);
  for (auto& z : f.flat()) z = cuniform();
  return f;
}

// Smooth, well-resolved field: random combination of Gaussians times plane waves.
inline SpinorField smooth_field(const Grid& g, int s) {
  SpinorField f(g, s);
  for (int c = 0; c < s; ++c) {
    const cplx amp = cuniform();
    const double k = uniform(-2.0, 2.0);
    const double x0 = uniform(-1.0, 1.0);
    for (std::size_t n = 0; n < g.size(); ++n) {
      const auto x = g.coords(n);
      const double r2 = (x[0] - x0) * (x[0] - x0) + x[1] * x[1];
      f(c, n) = amp * std::polar(std::exp(-r2), k * x[0]);
    }
  }
  return f;
}

inline double max_abs_diff(const SpinorField& a, const SpinorField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.flat().size(); ++i) m = std::max(m, std::abs(a.flat()[i] - b.flat()[i]));
  return m;
}

inline double rel_diff(const SpinorField& a, const SpinorField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.flat().size(); ++i) {
    num += std::norm(a.flat()[i] - b.flat()[i]);
    den += std::norm(b.flat()[i]);
  }
  return std::sqrt(num / den);
}

inline SpinorMatrix random_matrix(int s, double scale = 1.0) {
  SpinorMatrix m(s, s);
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c) m(r, c) = scale * cuniform();
  return m;
}

// Independent reference: truncated Taylor series of exp(M).
inline SpinorMatrix taylor_exp(const SpinorMatrix& m, int terms) {
  SpinorMatrix sum = SpinorMatrix::Identity(m.rows(), m.cols());
  SpinorMatrix term = sum;
  for (int j = 1; j <= terms; ++j) {
    term = (term * m) / static_cast<double>(j);
    sum += term;
  }
  return sum;
}

}  // namespace dcurv::test
