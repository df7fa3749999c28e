#pragma once

// Dense complex linear algebra for matrices up to 64x64.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "gq/register.hpp"

namespace gq {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxDim = std::size_t{1} << kMaxQubits;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kClampTol = 1e-10;

/// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);
  static ComplexMatrix outer(std::span<const cplx> ket);  // |v><v|

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<cplx> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> entries() const noexcept { return data_; }
  std::span<cplx> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conj() const;
  cplx trace() const;
  bool all_finite() const noexcept;
  /// max_ij |A_ij - conj(A_ji)|; requires a square matrix.
  double hermiticity_error() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
/// a * b^dagger without forming the adjoint.
ComplexMatrix multiply_adjoint(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> kron(std::span<const cplx> a, std::span<const cplx> b);
std::vector<cplx> apply(const ComplexMatrix& a, std::span<const cplx> v);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEig {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // eigenvectors in columns, same order
};

/// Cyclic Jacobi. Throws NonFinite, NonHermitianInput, BadDimension.
HermitianEig hermitian_eig(const ComplexMatrix& a);
/// Eigenvalues only (descending).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

/// V f(Lambda) V^dagger for a precomputed decomposition.
ComplexMatrix spectral_apply(const HermitianEig& eig, std::span<const double> f_values);

/// Principal square root of a PSD matrix. Eigenvalues in [-1e-10, 0) are
/// treated as 0; anything lower throws NegativeEigenvalue.
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

/// Thin SVD a = U diag(s) V^dagger, s descending, k = min(rows, cols).
struct Svd {
  ComplexMatrix u;  // rows x k
  std::vector<double> s;
  ComplexMatrix v;  // cols x k
};
Svd svd(const ComplexMatrix& a);

/// Orthonormalizes the columns of `a` in place (modified Gram-Schmidt).
/// Columns that become numerically dependent are replaced by basis vectors
/// orthogonal to the previous ones.
void orthonormalize_columns(ComplexMatrix& a);

/// Ordered squared Schmidt coefficients. Construction validates them.
class SchmidtVector {
 public:
  static constexpr double kSumTol = 1e-10;

  explicit SchmidtVector(std::vector<double> lambdas);
  /// Clamps tiny negatives, sorts descending (stable) and validates.
  static SchmidtVector from_spectrum(std::vector<double> eigenvalues);

  std::span<const double> lambdas() const noexcept { return lambdas_; }
  std::size_t size() const noexcept { return lambdas_.size(); }
  double operator[](std::size_t i) const noexcept { return lambdas_[i]; }
  /// Number of coefficients above `tol`.
  std::size_t rank(double tol = 1e-12) const noexcept;

 private:
  std::vector<double> lambdas_;
};

/// table[i * d_traced + j] is the full-register basis index whose kept qubits
/// read i and traced qubits read j (both in ascending label order, MSB first).
std::vector<std::size_t> bipartite_index_table(const QubitSet& keep);

/// Tr over the complement of `keep` of a 2^n x 2^n operator. Kept qubits
/// retain their relative order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const QubitSet& keep);
/// Reduced operator of |psi><psi| on `keep`, computed without forming the
/// full projector.
ComplexMatrix reduced_from_pure(std::span<const cplx> amplitudes, const QubitSet& keep);
/// Schmidt spectrum across `cut`, from the reduced operator on the smaller side.
SchmidtVector schmidt_spectrum(std::span<const cplx> amplitudes, const Bipartition& cut);

}  // namespace gq
