#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dcurv {

using cplx = std::complex<double>;

// Periodic uniform grid on [-a_0, a_0) x [-a_1, a_1).
//
// Nodes are x_k = -a + k h with h = 2a/N, k = 0..N-1. Storage is row-major:
// the flat index of node (k0, k1) is k0 * N1 + k1, so the last axis is
// contiguous. Fourier bins follow the usual FFT order; bin j carries the
// signed mode p(j) with p in {-N/2, ..., N/2-1} for even N and
// {-(N-1)/2, ..., (N-1)/2} for odd N, and wavenumber xi_p = p pi / a.
class Grid {
 public:
  Grid(int dim, std::span<const double> half_width, std::span<const std::size_t> count);

  int dim() const noexcept { return dim_; }
  double half_width(int axis) const { return a_.at(axis); }
  std::size_t count(int axis) const { return n_.at(axis); }
  double spacing(int axis) const { return 2.0 * a_.at(axis) / static_cast<double>(n_.at(axis)); }
  double node(int axis, std::size_t k) const {
    return -a_[axis] + static_cast<double>(k) * spacing(axis);
  }
  std::vector<double> nodes(int axis) const;

  long mode(int axis, std::size_t bin) const;
  double wavenumber(int axis, std::size_t bin) const;
  // Signed modes in ascending order.
  std::vector<long> modes(int axis) const;
  // True for the unpaired p = -N/2 bin of an even axis.
  bool is_nyquist(int axis, std::size_t bin) const;

  std::size_t size() const noexcept { return dim_ == 1 ? n_[0] : n_[0] * n_[1]; }
  std::size_t stride(int axis) const { return (dim_ == 2 && axis == 0) ? n_[1] : 1; }
  // h_0 (1-D) or h_0 h_1 (2-D).
  double cell_volume() const;
  // Per-axis node index of a flat index.
  std::array<std::size_t, 2> unflatten(std::size_t flat) const;
  std::array<double, 2> coords(std::size_t flat) const;

  bool operator==(const Grid&) const = default;

 private:
  int dim_ = 1;
  std::array<double, 2> a_{};
  std::array<std::size_t, 2> n_{};
};

// Validating factory: d in {1,2}, a_i > 0, N_i >= 4.
Grid make_grid(int dim, std::span<const double> half_width, std::span<const std::size_t> count);

// S-component complex field on a Grid, stored component-major:
// component c occupies [c * size, (c + 1) * size) of the flat buffer.
class SpinorField {
 public:
  SpinorField(Grid grid, int spinor_dim);

  const Grid& grid() const noexcept { return grid_; }
  int spinor_dim() const noexcept { return s_; }
  std::size_t nodes() const noexcept { return grid_.size(); }

  std::span<cplx> component(int c);
  std::span<const cplx> component(int c) const;
  std::span<cplx> flat() noexcept { return data_; }
  std::span<const cplx> flat() const noexcept { return data_; }

  cplx& operator()(int c, std::size_t k) { return data_[static_cast<std::size_t>(c) * nodes() + k]; }
  const cplx& operator()(int c, std::size_t k) const {
    return data_[static_cast<std::size_t>(c) * nodes() + k];
  }

  bool same_shape(const SpinorField& other) const noexcept {
    return s_ == other.s_ && grid_ == other.grid_;
  }
  bool all_finite() const noexcept;

 private:
  Grid grid_;
  int s_;
  std::vector<cplx> data_;
};

// Plain Euclidean norm of the flat buffer.
double euclidean_norm(const SpinorField& f);
// (h^d sum_k |psi_k|^2)^{1/2}.
double l2_norm(const SpinorField& f);
// (h^d sum_k w_k |psi_k|^2)^{1/2}.
double weighted_l2_norm(const SpinorField& f, std::span<const double> weight);

}  // namespace dcurv
