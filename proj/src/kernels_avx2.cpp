// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and must only be entered after a runtime CPU check (see kernels.cpp).
#include <immintrin.h>

#include <array>

#include "kernels_impl.hpp"

namespace dcurv::kernels {
namespace {

// One __m256d holds two complex doubles: (re0, im0, re1, im1).
inline __m256d load(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m256d broadcast(cplx z) { return _mm256_setr_pd(z.real(), z.imag(), z.real(), z.imag()); }

// (ar br - ai bi, ai br + ar bi) per complex lane.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

// acc + a * b
inline __m256d cfma(__m256d acc, __m256d a, __m256d b) { return _mm256_add_pd(acc, cmul(a, b)); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void spinor_matvec(int s, const cplx* const* mat, cplx* const* psi, std::size_t n) {
  std::size_t k = 0;
  __m256d in[4];
  for (; k + 2 <= n; k += 2) {
    for (int c = 0; c < s; ++c) in[c] = load(psi[c] + k);
    for (int r = 0; r < s; ++r) {
      __m256d acc = cmul(load(mat[r * s] + k), in[0]);
      for (int c = 1; c < s; ++c) acc = cfma(acc, load(mat[r * s + c] + k), in[c]);
      store(psi[r] + k, acc);
    }
  }
  std::array<cplx, 4> tail{};
  for (; k < n; ++k) {
    for (int c = 0; c < s; ++c) tail[c] = psi[c][k];
    for (int r = 0; r < s; ++r) {
      cplx acc = 0.0;
      for (int c = 0; c < s; ++c) acc += mat[r * s + c][k] * tail[c];
      psi[r][k] = acc;
    }
  }
}

void spinor_matvec_const(int s, const cplx* m, cplx* const* psi, std::size_t n) {
  __m256d mv[16];
  for (int i = 0; i < s * s; ++i) mv[i] = broadcast(m[i]);
  __m256d in[4];
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    for (int c = 0; c < s; ++c) in[c] = load(psi[c] + k);
    for (int r = 0; r < s; ++r) {
      __m256d acc = cmul(mv[r * s], in[0]);
      for (int c = 1; c < s; ++c) acc = cfma(acc, mv[r * s + c], in[c]);
      store(psi[r] + k, acc);
    }
  }
  std::array<cplx, 4> tail{};
  for (; k < n; ++k) {
    for (int c = 0; c < s; ++c) tail[c] = psi[c][k];
    for (int r = 0; r < s; ++r) {
      cplx acc = 0.0;
      for (int c = 0; c < s; ++c) acc += m[r * s + c] * tail[c];
      psi[r][k] = acc;
    }
  }
}

void mul(cplx* y, const cplx* x, std::size_t n) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) store(y + k, cmul(load(y + k), load(x + k)));
  for (; k < n; ++k) y[k] *= x[k];
}

void scale(cplx* y, cplx alpha, std::size_t n) {
  const __m256d a = broadcast(alpha);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) store(y + k, cmul(load(y + k), a));
  for (; k < n; ++k) y[k] *= alpha;
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  const __m256d a = broadcast(alpha);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) store(y + k, cfma(load(y + k), a, load(x + k)));
  for (; k < n; ++k) y[k] += alpha * x[k];
}

void fma_coef(cplx* y, cplx alpha, const cplx* coef, const cplx* x, std::size_t n) {
  const __m256d a = broadcast(alpha);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    store(y + k, cfma(load(y + k), a, cmul(load(coef + k), load(x + k))));
  }
  for (; k < n; ++k) y[k] += alpha * (coef[k] * x[k]);
}

void blend(cplx* y, const cplx* a, const cplx* x, std::size_t n) {
  // y + a (x - y)
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d yv = load(y + k);
    store(y + k, cfma(yv, load(a + k), _mm256_sub_pd(load(x + k), yv)));
  }
  for (; k < n; ++k) y[k] = a[k] * x[k] + (1.0 - a[k]) * y[k];
}

double norm2(const cplx* x, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(x);
  const std::size_t m = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    const __m256d a = _mm256_loadu_pd(d + i);
    const __m256d b = _mm256_loadu_pd(d + i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < m; ++i) acc += d[i] * d[i];
  return acc;
}

double weighted_norm2(const double* w, const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d v = load(x + k);
    // (w0, w0, w1, w1)
    const __m128d wp = _mm_loadu_pd(w + k);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(wp), 0x50);
    acc = _mm256_fmadd_pd(ww, _mm256_mul_pd(v, v), acc);
  }
  double out = hsum(acc);
  for (; k < n; ++k) out += w[k] * std::norm(x[k]);
  return out;
}

cplx dot(const cplx* x, const cplx* y, std::size_t n) {
  // re: xr yr + xi yi ; im: xr yi - xi yr
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = load(x + k);
    const __m256d yv = load(y + k);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), acc_im);
  }
  alignas(32) double re[4];
  alignas(32) double im[4];
  _mm256_store_pd(re, acc_re);
  _mm256_store_pd(im, acc_im);
  // acc_im lanes: (xr yi, xi yr, ...)
  cplx out(re[0] + re[1] + re[2] + re[3], (im[0] - im[1]) + (im[2] - im[3]));
  for (; k < n; ++k) out += std::conj(x[k]) * y[k];
  return out;
}

}  // namespace

const KernelTable kAvx2Table{
    Isa::Avx2, "avx2", spinor_matvec, spinor_matvec_const, mul, scale, axpy,
    fma_coef,  blend,  norm2,         weighted_norm2,      dot,
};

}  // namespace dcurv::kernels
