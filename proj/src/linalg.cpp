#include "gq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gq/error.hpp"
#include "gq/kernels.hpp"

namespace gq {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorCode::BadDimension, "matrix shapes differ");
}

void check_register_dim(std::size_t dim, int n_qubits) {
  if (dim != (std::size_t{1} << n_qubits))
    fail(ErrorCode::BadDimension, "dimension " + std::to_string(dim) + " does not match " +
                                      std::to_string(n_qubits) + " qubits");
}

}  // namespace

std::vector<std::size_t> bipartite_index_table(const QubitSet& keep) {
  const int n = keep.n_qubits();
  const auto kept = keep.labels();
  const auto traced = keep.complement().labels();
  const std::size_t dk = std::size_t{1} << kept.size();
  const std::size_t dt = std::size_t{1} << traced.size();
  std::vector<std::size_t> table(dk * dt);
  for (std::size_t i = 0; i < dk; ++i) {
    std::size_t base = 0;
    for (std::size_t m = 0; m < kept.size(); ++m)
      if ((i >> (kept.size() - 1 - m)) & 1u) base |= std::size_t{1} << (n - 1 - kept[m]);
    for (std::size_t j = 0; j < dt; ++j) {
      std::size_t idx = base;
      for (std::size_t m = 0; m < traced.size(); ++m)
        if ((j >> (traced.size() - 1 - m)) & 1u) idx |= std::size_t{1} << (n - 1 - traced[m]);
      table[i * dt + j] = idx;
    }
  }
  return table;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) fail(ErrorCode::BadDimension, "entry count does not match shape");
  if (!all_finite()) fail(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> ket) {
  ComplexMatrix m(ket.size(), ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix m = *this;
  for (auto& z : m.data_) z = std::conj(z);
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double ComplexMatrix::hermiticity_error() const {
  if (!square()) fail(ErrorCode::BadDimension, "hermiticity needs a square matrix");
  double err = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j) err = std::max(err, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return err;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::BadDimension, "inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k) != 0.0) kernels::axpy(a(i, k), b.row(k), c.row(i));
  return c;
}

ComplexMatrix multiply_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) fail(ErrorCode::BadDimension, "column counts differ");
  ComplexMatrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) c(i, j) = kernels::dot_conj(a.row(i), b.row(j));
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return c;
}

std::vector<cplx> kron(std::span<const cplx> a, std::span<const cplx> b) {
  std::vector<cplx> out;
  out.reserve(a.size() * b.size());
  for (const cplx& x : a)
    for (const cplx& y : b) out.push_back(x * y);
  return out;
}

std::vector<cplx> apply(const ComplexMatrix& a, std::span<const cplx> v) {
  if (a.cols() != v.size()) fail(ErrorCode::BadDimension, "vector length differs from column count");
  std::vector<cplx> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double d = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
  return d;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffTol = 1e-13;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

void validate_hermitian(const ComplexMatrix& a) {
  if (!a.square()) fail(ErrorCode::BadDimension, "eigendecomposition needs a square matrix");
  if (a.rows() == 0 || a.rows() > kMaxDim) fail(ErrorCode::BadDimension, "dimension must be 1..64");
  if (!a.all_finite()) fail(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
  if (a.hermiticity_error() > kHermitianTol)
    fail(ErrorCode::NonHermitianInput, "max |A - A^dagger| exceeds 1e-10");
}

// Diagonalizes `a` in place; returns V^T (eigenvectors as rows) when wanted.
ComplexMatrix jacobi(ComplexMatrix& a, bool want_vectors) {
  const std::size_t n = a.rows();
  // Exact Hermitian symmetrization first; the tolerance check already passed.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix vt = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix();

  double frob = 0.0;
  for (const cplx& z : a.entries()) frob += std::norm(z);
  const double stop = kOffTol * std::max(1.0, std::sqrt(frob));

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) >= stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx z = a(p, q);
        const double mag = std::abs(z);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx e = std::conj(z) / mag;  // e^{-i arg z}

        // Rows p, q of G^dagger A; the rest of columns p, q follows by symmetry.
        kernels::rotate_pair(a.row(p), a.row(q), c, -s * std::conj(e), s, c * std::conj(e));
        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          a(i, p) = std::conj(a(p, i));
          a(i, q) = std::conj(a(q, i));
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        if (want_vectors) kernels::rotate_pair(vt.row(p), vt.row(q), c, -s * e, s, c * e);
      }
    }
  }
  return vt;
}

std::vector<std::size_t> descending_order(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
  return order;
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& a) {
  validate_hermitian(a);
  ComplexMatrix work = a;
  const ComplexMatrix vt = jacobi(work, true);
  const std::size_t n = a.rows();
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = work(i, i).real();
  const auto order = descending_order(diag);

  HermitianEig out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = vt(order[k], i);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  validate_hermitian(a);
  ComplexMatrix work = a;
  jacobi(work, false);
  std::vector<double> diag(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) diag[i] = work(i, i).real();
  std::stable_sort(diag.begin(), diag.end(), std::greater<>());
  return diag;
}

ComplexMatrix spectral_apply(const HermitianEig& eig, std::span<const double> f_values) {
  const std::size_t n = eig.values.size();
  if (f_values.size() != n) fail(ErrorCode::BadDimension, "one function value per eigenvalue required");
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) scaled(i, k) *= f_values[k];
  return multiply_adjoint(scaled, eig.vectors);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  const HermitianEig eig = hermitian_eig(a);
  std::vector<double> roots(eig.values.size());
  // Eigenvalues at the roundoff level of the largest are zero; their square
  // roots would otherwise be ~1e-8.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(eig.values.front(), 0.0);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const double v = eig.values[k];
    if (v < -kClampTol) fail(ErrorCode::NegativeEigenvalue, "eigenvalue " + std::to_string(v) + " below -1e-10");
    roots[k] = v > floor ? std::sqrt(v) : 0.0;
  }
  ComplexMatrix r = spectral_apply(eig, roots);
  // Remove the roundoff-level anti-Hermitian part.
  for (std::size_t i = 0; i < r.rows(); ++i) {
    r(i, i) = r(i, i).real();
    for (std::size_t j = i + 1; j < r.cols(); ++j) {
      const cplx avg = 0.5 * (r(i, j) + std::conj(r(j, i)));
      r(i, j) = avg;
      r(j, i) = std::conj(avg);
    }
  }
  return r;
}

void orthonormalize_columns(ComplexMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  if (k > m) fail(ErrorCode::BadDimension, "more columns than rows");
  // Work on columns as rows of the transpose so the kernels see contiguous data.
  ComplexMatrix t(k, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) t(j, i) = a(i, j);

  std::size_t fill = 0;  // next standard basis vector to try for dependent columns
  for (std::size_t j = 0; j < k; ++j) {
    for (int attempt = 0;; ++attempt) {
      const double before = std::sqrt(kernels::norm2(t.row(j)));
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t l = 0; l < j; ++l) kernels::axpy(-kernels::dot_conj(t.row(j), t.row(l)), t.row(l), t.row(j));
      const double after = std::sqrt(kernels::norm2(t.row(j)));
      if (after > 1e-10 * std::max(1.0, before)) {
        kernels::scale(1.0 / after, t.row(j));
        break;
      }
      if (fill >= m) fail(ErrorCode::BadDimension, "could not complete an orthonormal basis");
      std::fill(t.row(j).begin(), t.row(j).end(), cplx{});
      t(j, fill++) = 1.0;
      (void)attempt;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) a(i, j) = t(j, i);
}

Svd svd(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t k = std::min(m, n);
  // Gram matrix a^dagger a = (a^T)(a^T)^dagger conjugated; form it directly.
  ComplexMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t r = 0; r < m; ++r) s += std::conj(a(r, i)) * a(r, j);
      gram(i, j) = s;
    }
  const HermitianEig eig = hermitian_eig(gram);

  Svd out{ComplexMatrix(m, k), std::vector<double>(k), ComplexMatrix(n, k)};
  double smax = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    out.s[c] = std::sqrt(std::max(eig.values[c], 0.0));
    smax = std::max(smax, out.s[c]);
    for (std::size_t i = 0; i < n; ++i) out.v(i, c) = eig.vectors(i, c);
  }
  const double tol = 1e-12 * std::max(1.0, smax);
  for (std::size_t c = 0; c < k; ++c) {
    if (out.s[c] <= tol) continue;  // completed below
    for (std::size_t r = 0; r < m; ++r) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += a(r, i) * out.v(i, c);
      out.u(r, c) = s / out.s[c];
    }
  }
  orthonormalize_columns(out.u);
  return out;
}

// ---------------------------------------------------------------------------
// Schmidt spectra and partial traces

SchmidtVector::SchmidtVector(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) fail(ErrorCode::BadParameter, "empty Schmidt vector");
  double sum = 0.0;
  for (std::size_t i = 0; i < lambdas_.size(); ++i) {
    const double l = lambdas_[i];
    if (!std::isfinite(l)) fail(ErrorCode::NonFinite, "Schmidt coefficient is not finite");
    if (l < 0.0 || l > 1.0) fail(ErrorCode::BadParameter, "Schmidt coefficient outside [0,1]");
    if (i > 0 && l > lambdas_[i - 1]) fail(ErrorCode::BadParameter, "Schmidt coefficients must be descending");
    sum += l;
  }
  if (std::abs(sum - 1.0) > kSumTol) fail(ErrorCode::BadParameter, "Schmidt coefficients must sum to 1");
}

SchmidtVector SchmidtVector::from_spectrum(std::vector<double> eigenvalues) {
  for (double& l : eigenvalues) {
    if (l < 0.0 && l >= -kClampTol) l = 0.0;
    if (l > 1.0 && l <= 1.0 + kClampTol) l = 1.0;
  }
  std::stable_sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  return SchmidtVector(std::move(eigenvalues));
}

std::size_t SchmidtVector::rank(double tol) const noexcept {
  return static_cast<std::size_t>(std::count_if(lambdas_.begin(), lambdas_.end(), [tol](double l) { return l > tol; }));
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const QubitSet& keep) {
  if (!rho.square()) fail(ErrorCode::BadDimension, "partial trace needs a square operator");
  check_register_dim(rho.rows(), keep.n_qubits());
  if (keep.empty() || keep.full()) fail(ErrorCode::BadSubsystem, "kept set must be a nonempty proper subset");
  const auto table = bipartite_index_table(keep);
  const std::size_t dk = std::size_t{1} << keep.size();
  const std::size_t dt = rho.rows() / dk;
  ComplexMatrix out(dk, dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t i2 = 0; i2 < dk; ++i2) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < dt; ++j) s += rho(table[i * dt + j], table[i2 * dt + j]);
      out(i, i2) = s;
    }
  return out;
}

ComplexMatrix reduced_from_pure(std::span<const cplx> amplitudes, const QubitSet& keep) {
  check_register_dim(amplitudes.size(), keep.n_qubits());
  if (keep.empty() || keep.full()) fail(ErrorCode::BadSubsystem, "kept set must be a nonempty proper subset");
  const auto table = bipartite_index_table(keep);
  const std::size_t dk = std::size_t{1} << keep.size();
  const std::size_t dt = amplitudes.size() / dk;
  ComplexMatrix psi(dk, dt);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dt; ++j) psi(i, j) = amplitudes[table[i * dt + j]];
  return multiply_adjoint(psi, psi);
}

SchmidtVector schmidt_spectrum(std::span<const cplx> amplitudes, const Bipartition& cut) {
  const QubitSet a = cut.side_a();
  const QubitSet smaller = a.size() <= a.n_qubits() - a.size() ? a : a.complement();
  auto eig = hermitian_eigenvalues(reduced_from_pure(amplitudes, smaller));
  // Absorb the normalization slack allowed on input states.
  const double total = std::accumulate(eig.begin(), eig.end(), 0.0);
  if (total > 0.0)
    for (double& l : eig) l /= total;
  return SchmidtVector::from_spectrum(std::move(eig));
}

}  // namespace gq
