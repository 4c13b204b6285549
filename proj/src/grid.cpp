#include "dcurv/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dcurv/errors.hpp"
#include "dcurv/kernels.hpp"

namespace dcurv {

Grid::Grid(int dim, std::span<const double> half_width, std::span<const std::size_t> count) : dim_(dim) {
  if (dim != 1 && dim != 2) throw ConfigError("grid dimension must be 1 or 2");
  if (half_width.size() < static_cast<std::size_t>(dim) || count.size() < static_cast<std::size_t>(dim)) {
    throw ConfigError("grid needs one half-width and one count per axis");
  }
  for (int i = 0; i < dim; ++i) {
    if (!(half_width[i] > 0.0) || !std::isfinite(half_width[i])) {
      throw ConfigError("grid half-width must be positive, axis " + std::to_string(i));
    }
    if (count[i] < 4) throw ConfigError("grid needs at least 4 points, axis " + std::to_string(i));
    a_[i] = half_width[i];
    n_[i] = count[i];
  }
  if (dim == 1) {
    a_[1] = 0.0;
    n_[1] = 1;
  }
}

std::vector<double> Grid::nodes(int axis) const {
  std::vector<double> x(count(axis));
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = node(axis, k);
  return x;
}

long Grid::mode(int axis, std::size_t bin) const {
  const std::size_t n = count(axis);
  if (bin >= n) throw std::out_of_range("Fourier bin out of range");
  // Bins past the midpoint carry negative modes; for even N the bin N/2 is -N/2.
  const std::size_t half = n / 2;
  const bool negative = (n % 2 == 0) ? bin >= half : bin > half;
  return negative ? static_cast<long>(bin) - static_cast<long>(n) : static_cast<long>(bin);
}

double Grid::wavenumber(int axis, std::size_t bin) const {
  return static_cast<double>(mode(axis, bin)) * std::numbers::pi / half_width(axis);
}

std::vector<long> Grid::modes(int axis) const {
  const long n = static_cast<long>(count(axis));
  const long lo = (n % 2 == 0) ? -n / 2 : -(n - 1) / 2;
  std::vector<long> p(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) p[static_cast<std::size_t>(j)] = lo + j;
  return p;
}

bool Grid::is_nyquist(int axis, std::size_t bin) const {
  const std::size_t n = count(axis);
  return n % 2 == 0 && bin == n / 2;
}

double Grid::cell_volume() const {
  return dim_ == 1 ? spacing(0) : spacing(0) * spacing(1);
}

std::array<std::size_t, 2> Grid::unflatten(std::size_t flat) const {
  if (dim_ == 1) return {flat, 0};
  return {flat / n_[1], flat % n_[1]};
}

std::array<double, 2> Grid::coords(std::size_t flat) const {
  const auto k = unflatten(flat);
  if (dim_ == 1) return {node(0, k[0]), 0.0};
  return {node(0, k[0]), node(1, k[1])};
}

Grid make_grid(int dim, std::span<const double> half_width, std::span<const std::size_t> count) {
  return Grid(dim, half_width, count);
}

SpinorField::SpinorField(Grid grid, int spinor_dim) : grid_(std::move(grid)), s_(spinor_dim) {
  if (spinor_dim != 2 && spinor_dim != 4) throw ConfigError("spinor dimension must be 2 or 4");
  data_.assign(static_cast<std::size_t>(s_) * grid_.size(), cplx(0.0, 0.0));
}

std::span<cplx> SpinorField::component(int c) {
  if (c < 0 || c >= s_) throw std::out_of_range("spinor component out of range");
  return std::span<cplx>(data_).subspan(static_cast<std::size_t>(c) * nodes(), nodes());
}

std::span<const cplx> SpinorField::component(int c) const {
  if (c < 0 || c >= s_) throw std::out_of_range("spinor component out of range");
  return std::span<const cplx>(data_).subspan(static_cast<std::size_t>(c) * nodes(), nodes());
}

bool SpinorField::all_finite() const noexcept {
  for (const cplx& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double euclidean_norm(const SpinorField& f) {
  const auto d = f.flat();
  return std::sqrt(kernels::active().norm2(d.data(), d.size()));
}

double l2_norm(const SpinorField& f) {
  return std::sqrt(f.grid().cell_volume()) * euclidean_norm(f);
}

double weighted_l2_norm(const SpinorField& f, std::span<const double> weight) {
  if (weight.size() != f.nodes()) throw std::invalid_argument("weight field size mismatch");
  const auto& kt = kernels::active();
  double acc = 0.0;
  for (int c = 0; c < f.spinor_dim(); ++c) {
    const auto comp = f.component(c);
    acc += kt.weighted_norm2(weight.data(), comp.data(), comp.size());
  }
  return std::sqrt(f.grid().cell_volume() * acc);
}

}  // namespace dcurv
