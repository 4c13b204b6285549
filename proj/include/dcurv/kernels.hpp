#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Pointwise arithmetic kernels used by every stepping scheme.
//
// Each kernel has a scalar reference implementation and, on x86-64 hosts
// that report AVX2+FMA at runtime, a vectorised variant. The active table
// is chosen once on first use; setting DCURV_KERNELS=scalar in the
// environment (or calling select()) pins the scalar table. The two tables
// agree to rounding, not bit-for-bit: FMA contraction and the reduction
// order differ.
namespace dcurv::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;

  // psi_r[k] <- sum_c mat[r*s + c][k] * psi_c[k]   (per-node s x s matrices, in place)
  void (*spinor_matvec)(int s, const cplx* const* mat, cplx* const* psi, std::size_t n);
  // psi_r[k] <- sum_c m[r*s + c] * psi_c[k]        (one matrix for all nodes, in place)
  void (*spinor_matvec_const)(int s, const cplx* m, cplx* const* psi, std::size_t n);
  // y[k] *= x[k]
  void (*mul)(cplx* y, const cplx* x, std::size_t n);
  // y[k] *= alpha
  void (*scale)(cplx* y, cplx alpha, std::size_t n);
  // y[k] += alpha * x[k]
  void (*axpy)(cplx* y, cplx alpha, const cplx* x, std::size_t n);
  // y[k] += alpha * coef[k] * x[k]
  void (*fma_coef)(cplx* y, cplx alpha, const cplx* coef, const cplx* x, std::size_t n);
  // y[k] <- a[k] * x[k] + (1 - a[k]) * y[k]
  void (*blend)(cplx* y, const cplx* a, const cplx* x, std::size_t n);
  // sum_k |x_k|^2
  double (*norm2)(const cplx* x, std::size_t n);
  // sum_k w_k |x_k|^2
  double (*weighted_norm2)(const double* w, const cplx* x, std::size_t n);
  // sum_k conj(x_k) y_k
  cplx (*dot)(const cplx* x, const cplx* y, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
// nullptr when the variant was not compiled in or the CPU lacks the ISA.
const KernelTable* avx2_table() noexcept;

// Table used by the solver.
const KernelTable& active() noexcept;
// Force a table; throws std::invalid_argument if it is unavailable.
void select(Isa isa);

}  // namespace dcurv::kernels
