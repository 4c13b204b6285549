#include "dcurv/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "dcurv/kernels.hpp"

namespace dcurv {
namespace {

using PlanKey = std::tuple<int, std::size_t, std::size_t, int, int>;

struct PlanCache {
  std::mutex mu;
  std::map<PlanKey, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [k, p] : plans) fftw_destroy_plan(p);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void check_axis(const Grid& grid, int axis) {
  if (axis < 0 || axis >= grid.dim()) throw std::out_of_range("axis out of range");
}

// Plan for one component block (grid.size() values), in place.
fftw_plan plan_for(const Grid& grid, int axis, int sign) {
  const std::size_t n0 = grid.count(0);
  const std::size_t n1 = grid.dim() == 2 ? grid.count(1) : 1;
  const PlanKey key{grid.dim(), n0, n1, axis, sign};
  auto& c = cache();
  std::lock_guard lock(c.mu);
  if (auto it = c.plans.find(key); it != c.plans.end()) return it->second;

  const int n = static_cast<int>(grid.count(axis));
  int howmany = 1;
  int stride = 1;
  int dist = n;
  if (grid.dim() == 2) {
    if (axis == 0) {
      howmany = static_cast<int>(n1);
      stride = static_cast<int>(n1);
      dist = 1;
    } else {
      howmany = static_cast<int>(n0);
      stride = 1;
      dist = static_cast<int>(n1);
    }
  }
  auto* buf = fftw_alloc_complex(grid.size());
  fftw_plan p = fftw_plan_many_dft(1, &n, howmany, buf, nullptr, stride, dist, buf, nullptr, stride, dist,
                                   sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (p == nullptr) throw std::runtime_error("FFTW planning failed");
  c.plans.emplace(key, p);
  return p;
}

}  // namespace

void fft_axis(const Grid& grid, int axis, std::span<cplx> data, int sign) {
  check_axis(grid, axis);
  const std::size_t block = grid.size();
  if (data.size() % block != 0) throw std::invalid_argument("buffer is not a whole number of fields");
  fftw_plan p = plan_for(grid, axis, sign);
  for (std::size_t off = 0; off < data.size(); off += block) {
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data() + off);
    fftw_execute_dft(p, ptr, ptr);
  }
}

SpinorField forward_dft_axis(const SpinorField& f, int axis) {
  SpinorField out = f;
  fft_axis(out.grid(), axis, out.flat(), -1);
  return out;
}

SpinorField inverse_dft_axis(const SpinorField& f, int axis) {
  SpinorField out = f;
  fft_axis(out.grid(), axis, out.flat(), +1);
  const double inv = 1.0 / static_cast<double>(f.grid().count(axis));
  kernels::active().scale(out.flat().data(), inv, out.flat().size());
  return out;
}

std::vector<cplx> derivative_symbol(const Grid& grid, int axis, int order) {
  check_axis(grid, axis);
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  const std::size_t n = grid.count(axis);
  const double inv = 1.0 / static_cast<double>(n);
  std::vector<cplx> sym(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double xi = grid.wavenumber(axis, j);
    if (order == 1) {
      sym[j] = grid.is_nyquist(axis, j) ? cplx(0.0) : cplx(0.0, xi * inv);
    } else {
      sym[j] = cplx(-xi * xi * inv, 0.0);
    }
  }
  return sym;
}

void apply_axis_symbol(const Grid& grid, int axis, std::span<cplx> data, std::span<const cplx> symbol) {
  check_axis(grid, axis);
  const std::size_t n = grid.count(axis);
  if (symbol.size() != n) throw std::invalid_argument("symbol length mismatch");
  fft_axis(grid, axis, data, -1);
  const std::size_t block = grid.size();
  const auto& kt = kernels::active();
  if (grid.dim() == 1 || axis == 1) {
    for (std::size_t off = 0; off < data.size(); off += n) kt.mul(data.data() + off, symbol.data(), n);
  } else {
    const std::size_t n1 = grid.count(1);
    for (std::size_t off = 0; off < data.size(); off += block) {
      for (std::size_t k0 = 0; k0 < n; ++k0) kt.scale(data.data() + off + k0 * n1, symbol[k0], n1);
    }
  }
  fft_axis(grid, axis, data, +1);
}

SpinorField spectral_derivative(const SpinorField& f, int axis, int order) {
  SpinorField out = f;
  const auto sym = derivative_symbol(f.grid(), axis, order);
  apply_axis_symbol(f.grid(), axis, out.flat(), sym);
  return out;
}

Eigen::MatrixXcd dense_diff_matrix(std::size_t n, double half_width) {
  if (n < 4) throw std::invalid_argument("dense_diff_matrix needs N >= 4");
  const long nn = static_cast<long>(n);
  const long lo = (nn % 2 == 0) ? -nn / 2 + 1 : -(nn - 1) / 2;  // even N: Nyquist omitted
  const long hi = (nn % 2 == 0) ? nn / 2 - 1 : (nn - 1) / 2;
  // Circulant: A_{k k'} depends only on m = k - k' mod N.
  std::vector<cplx> col(n);
  for (long m = 0; m < nn; ++m) {
    cplx acc = 0.0;
    for (long p = lo; p <= hi; ++p) {
      const double xi = static_cast<double>(p) * std::numbers::pi / half_width;
      const long r = ((p * m) % nn + nn) % nn;
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(nn);
      acc += cplx(0.0, xi) * std::polar(1.0, phase);
    }
    col[static_cast<std::size_t>(m)] = acc / static_cast<double>(nn);
  }
  Eigen::MatrixXcd a(nn, nn);
  for (long k = 0; k < nn; ++k) {
    for (long kp = 0; kp < nn; ++kp) a(k, kp) = col[static_cast<std::size_t>(((k - kp) % nn + nn) % nn)];
  }
  return a;
}

}  // namespace dcurv
