#include <array>

#include "kernels_impl.hpp"

namespace dcurv::kernels {
namespace {

void spinor_matvec(int s, const cplx* const* mat, cplx* const* psi, std::size_t n) {
  std::array<cplx, 4> in{};
  for (std::size_t k = 0; k < n; ++k) {
    for (int c = 0; c < s; ++c) in[c] = psi[c][k];
    for (int r = 0; r < s; ++r) {
      cplx acc = 0.0;
      for (int c = 0; c < s; ++c) acc += mat[r * s + c][k] * in[c];
      psi[r][k] = acc;
    }
  }
}

void spinor_matvec_const(int s, const cplx* m, cplx* const* psi, std::size_t n) {
  std::array<cplx, 4> in{};
  for (std::size_t k = 0; k < n; ++k) {
    for (int c = 0; c < s; ++c) in[c] = psi[c][k];
    for (int r = 0; r < s; ++r) {
      cplx acc = 0.0;
      for (int c = 0; c < s; ++c) acc += m[r * s + c] * in[c];
      psi[r][k] = acc;
    }
  }
}

void mul(cplx* y, const cplx* x, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] *= x[k];
}

void scale(cplx* y, cplx alpha, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] *= alpha;
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

void fma_coef(cplx* y, cplx alpha, const cplx* coef, const cplx* x, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * (coef[k] * x[k]);
}

void blend(cplx* y, const cplx* a, const cplx* x, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] = a[k] * x[k] + (1.0 - a[k]) * y[k];
}

double norm2(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += std::norm(x[k]);
  return acc;
}

double weighted_norm2(const double* w, const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += w[k] * std::norm(x[k]);
  return acc;
}

cplx dot(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += std::conj(x[k]) * y[k];
  return acc;
}

}  // namespace

const KernelTable kScalarTable{
    Isa::Scalar, "scalar", spinor_matvec, spinor_matvec_const, mul, scale, axpy,
    fma_coef,    blend,    norm2,         weighted_norm2,      dot,
};

}  // namespace dcurv::kernels
