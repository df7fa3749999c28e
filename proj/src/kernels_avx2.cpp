// Compiled with -mavx2 -mfma; only entered after a CPUID check.
#include <immintrin.h>

#include "gq/kernels.hpp"

namespace gq::kernels {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// a * v for a broadcast complex scalar a = (ar, ai).
inline __m256d cmul(__m256d ar, __m256d ai, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void rotate_pair_avx2(cplx* x, cplx* y, std::size_t n, cplx a, cplx b, cplx c, cplx d) {
  const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
  const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
  const __m256d cr = _mm256_set1_pd(c.real()), ci = _mm256_set1_pd(c.imag());
  const __m256d dr = _mm256_set1_pd(d.real()), di = _mm256_set1_pd(d.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = load2(x + k);
    const __m256d yv = load2(y + k);
    store2(x + k, _mm256_add_pd(cmul(ar, ai, xv), cmul(br, bi, yv)));
    store2(y + k, _mm256_add_pd(cmul(cr, ci, xv), cmul(dr, di, yv)));
  }
  for (; k < n; ++k) {
    const cplx xk = x[k];
    const cplx yk = y[k];
    x[k] = a * xk + b * yk;
    y[k] = c * xk + d * yk;
  }
}

void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) store2(y + k, _mm256_add_pd(load2(y + k), cmul(ar, ai, load2(x + k))));
  for (; k < n; ++k) y[k] += a * x[k];
}

cplx dot_conj_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = load2(x + k);
    const __m256d yv = load2(y + k);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_im);
  }
  // acc_im lanes hold [xr*yi, xi*yr, ...]; the imaginary part is odd minus even.
  const __m256d sign = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  double re = hsum(acc_re);
  double im = hsum(_mm256_mul_pd(acc_im, sign));
  for (; k < n; ++k) {
    re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
    im += x[k].imag() * y[k].real() - x[k].real() * y[k].imag();
  }
  return {re, im};
}

double norm2_avx2(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = load2(x + k);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  double s = hsum(acc);
  for (; k < n; ++k) s += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  return s;
}

void scale_avx2(double s, cplx* x, std::size_t n) {
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) store2(x + k, _mm256_mul_pd(sv, load2(x + k)));
  for (; k < n; ++k) x[k] *= s;
}

constexpr KernelTable kAvx2{rotate_pair_avx2, axpy_avx2, dot_conj_avx2, norm2_avx2, scale_avx2};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2; }

}  // namespace gq::kernels
