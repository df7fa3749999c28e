#pragma once
// Shared fixtures and brute-force reference computations for the tests.

#include <cmath>
#include <complex>
#include <vector>

#include "gq/linalg.hpp"
#include "gq/rng.hpp"
#include "gq/states.hpp"

namespace gq::test {

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = rng.gaussian();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = rng.complex_gaussian();
      a(j, i) = std::conj(a(i, j));
    }
  }
  return a;
}

inline ComplexMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
  ComplexMatrix a(r, c);
  for (auto& z : a.entries()) z = rng.complex_gaussian();
  return a;
}

// Naive triple loop, independent of the kernel-backed product.
inline ComplexMatrix naive_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline ComplexMatrix naive_adjoint(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

inline double max_abs(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

// Partial trace by explicit bit manipulation: keep the qubits listed in
// `keep` (ascending labels, label 0 = most significant bit).
inline ComplexMatrix brute_partial_trace(const ComplexMatrix& rho, int n, const std::vector<int>& keep) {
  const std::size_t d = std::size_t{1} << n;
  const std::size_t dk = std::size_t{1} << keep.size();
  ComplexMatrix out(dk, dk);
  auto bit = [n](std::size_t idx, int label) { return (idx >> (n - 1 - label)) & 1u; };
  auto kept_index = [&](std::size_t idx) {
    std::size_t k = 0;
    for (int l : keep) k = (k << 1) | bit(idx, l);
    return k;
  };
  auto traced_equal = [&](std::size_t a, std::size_t b) {
    for (int l = 0; l < n; ++l) {
      bool kept = false;
      for (int m : keep) kept = kept || m == l;
      if (!kept && bit(a, l) != bit(b, l)) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (traced_equal(i, j)) out(kept_index(i), kept_index(j)) += rho(i, j);
  return out;
}

// |psi><psi| as a matrix.
inline ComplexMatrix projector(const std::vector<cplx>& v) {
  ComplexMatrix p(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) p(i, j) = v[i] * std::conj(v[j]);
  return p;
}

// Closed-form pure-state G_q value from a spectrum, written directly.
inline double gq_direct(const std::vector<double>& lambdas, double q) {
  double s = 0.0;
  for (double l : lambdas) s += std::pow(l, q);
  return std::pow(std::max(0.0, 1.0 - s), 1.0 / q);
}

// h_q evaluated literally from its printed form.
inline double h_direct(double x, double q) {
  const double u = std::sqrt(1.0 - x * x);
  return std::pow(std::max(0.0, 1.0 - std::pow((1.0 + u) / 2.0, q) - std::pow((1.0 - u) / 2.0, q)), 1.0 / q);
}

}  // namespace gq::test

#include <doctest.h>

#include "gq/error.hpp"

namespace gq::test {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a gq::Error");
  return ErrorCode::ParseError;
}

}  // namespace gq::test

#define CHECK_CODE(expr, expected) CHECK(::gq::test::code_of([&] { (void)(expr); }) == (expected))
