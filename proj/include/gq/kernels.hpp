#pragma once

// Complex vector kernels used by the dense linear algebra layer.
//
// Each kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2/FMA variant. The variant is picked once at first use from CPUID and
// can be overridden with GQ_KERNELS=scalar|avx2 or select_backend(). All
// variants must agree with the scalar reference to rounding.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace gq::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  // x <- a*x + b*y, y <- c*x + d*y (simultaneously).
  void (*rotate_pair)(cplx* x, cplx* y, std::size_t n, cplx a, cplx b, cplx c, cplx d);
  // y <- y + a*x
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // sum_k x_k * conj(y_k)
  cplx (*dot_conj)(const cplx* x, const cplx* y, std::size_t n);
  // sum_k |x_k|^2
  double (*norm2)(const cplx* x, std::size_t n);
  // x <- s*x, s real
  void (*scale)(double s, cplx* x, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
#if defined(GQ_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

bool backend_available(Backend b) noexcept;
Backend active_backend() noexcept;
/// Returns false (and leaves the selection unchanged) if `b` is unavailable.
bool select_backend(Backend b) noexcept;
std::string_view backend_name(Backend b) noexcept;

const KernelTable& active() noexcept;

inline void rotate_pair(std::span<cplx> x, std::span<cplx> y, cplx a, cplx b, cplx c, cplx d) {
  active().rotate_pair(x.data(), y.data(), x.size(), a, b, c, d);
}
inline void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}
inline cplx dot_conj(std::span<const cplx> x, std::span<const cplx> y) {
  return active().dot_conj(x.data(), y.data(), x.size());
}
inline double norm2(std::span<const cplx> x) { return active().norm2(x.data(), x.size()); }
inline void scale(double s, std::span<cplx> x) { active().scale(s, x.data(), x.size()); }

}  // namespace gq::kernels
