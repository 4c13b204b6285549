#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "dcurv/grid.hpp"

namespace dcurv {

// Unnormalised in-place DFT along `axis` of every component stored in `data`
// (data.size() must be a multiple of grid.size()). sign = -1 is the forward
// transform sum_k f_k e^{-i xi_p (x_k + a)}, sign = +1 the unnormalised
// backward sum. Spectral values are kept in FFT bin order; Grid::mode maps a
// bin to its signed mode.
void fft_axis(const Grid& grid, int axis, std::span<cplx> data, int sign);

SpinorField forward_dft_axis(const SpinorField& f, int axis);
// Includes the 1/N_axis factor.
SpinorField inverse_dft_axis(const SpinorField& f, int axis);

// Per-bin multiplier (i xi)^order / N_axis. The first-order multiplier of the
// even-N Nyquist bin is zero.
std::vector<cplx> derivative_symbol(const Grid& grid, int axis, int order);

// data <- F^{-1}_axis [symbol * F_axis data] using the unnormalised backward
// transform, so `symbol` must already carry 1/N_axis.
void apply_axis_symbol(const Grid& grid, int axis, std::span<cplx> data, std::span<const cplx> symbol);

SpinorField spectral_derivative(const SpinorField& f, int axis, int order);

// Dense N x N first-derivative matrix built by direct summation over modes,
// independent of the FFT path.
Eigen::MatrixXcd dense_diff_matrix(std::size_t n, double half_width);

}  // namespace dcurv
