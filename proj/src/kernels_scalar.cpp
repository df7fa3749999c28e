#include "gq/kernels.hpp"

namespace gq::kernels {
namespace {

void rotate_pair_scalar(cplx* x, cplx* y, std::size_t n, cplx a, cplx b, cplx c, cplx d) {
  for (std::size_t k = 0; k < n; ++k) {
    const cplx xk = x[k];
    const cplx yk = y[k];
    x[k] = a * xk + b * yk;
    y[k] = c * xk + d * yk;
  }
}

void axpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += a * x[k];
}

cplx dot_conj_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
    im += x[k].imag() * y[k].real() - x[k].real() * y[k].imag();
  }
  return {re, im};
}

double norm2_scalar(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  return s;
}

void scale_scalar(double s, cplx* x, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) x[k] *= s;
}

constexpr KernelTable kScalar{rotate_pair_scalar, axpy_scalar, dot_conj_scalar, norm2_scalar,
                              scale_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace gq::kernels
