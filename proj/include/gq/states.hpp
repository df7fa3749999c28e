#pragma once

#include <span>
#include <vector>

#include "gq/linalg.hpp"
#include "gq/register.hpp"
#include "gq/rng.hpp"

namespace gq {

inline constexpr double kNormTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

/// Normalized amplitude vector over an n-qubit register.
class PureState {
 public:
  /// Throws InvalidState unless sum |a_i|^2 = 1 within 1e-10.
  PureState(int n_qubits, std::vector<cplx> amplitudes);
  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(int n_qubits, std::vector<cplx> amplitudes);

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  cplx operator[](std::size_t i) const noexcept { return amps_[i]; }

 private:
  int n_;
  std::vector<cplx> amps_;
};

/// Hermitian, unit-trace, PSD operator over an n-qubit register.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-10), trace (1e-10) and min eigenvalue >= -1e-9.
  DensityMatrix(int n_qubits, ComplexMatrix matrix);
  static DensityMatrix from_pure(const PureState& psi);

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  cplx operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }

  double purity() const;

 private:
  int n_;
  ComplexMatrix m_;
};

// Canonical families ---------------------------------------------------------

/// (|10..0> + |01..0> + ... + |0..01>)/sqrt(n), 2 <= n <= 6.
PureState w_state(int n);
/// (|0..0> + |1..1>)/sqrt(2), 2 <= n <= 6.
PureState ghz_state(int n);
/// Kronecker product of single-qubit states, first entry is label 0.
PureState product_state(std::span<const PureState> locals);
PureState basis_state(int n, std::size_t index);
/// |a> (x) |b>; labels of b follow those of a.
PureState tensor(const PureState& a, const PureState& b);
/// Relabels qubits: qubit `l` of the input becomes qubit `perm[l]` of the output.
PureState permute_qubits(const PureState& psi, std::span<const int> perm);
/// p |Phi+><Phi+| + (1-p) I/4.
DensityMatrix werner(double p);

// Sampling -------------------------------------------------------------------

/// Normalized vector of i.i.d. complex Gaussians, 1 <= n <= 6.
PureState haar_random_pure(int n, RngSeed seed);
/// Trace over a rank-dimensional ancilla of a random pure state on the
/// system plus ancilla; the result has rank <= `rank`.
DensityMatrix random_mixed(int n, int rank, RngSeed seed);
/// 2x2 unitary from Gram-Schmidt of Gaussian columns, each column phased so
/// its first nonzero entry is real positive.
ComplexMatrix haar_unitary_2x2(Rng& rng);
/// U_0 (x) U_1 (x) ... (x) U_{n-1} with independent 2x2 factors.
ComplexMatrix random_local_unitary(int n, RngSeed seed);

// Register operations --------------------------------------------------------

DensityMatrix conjugate_by(const DensityMatrix& rho, const ComplexMatrix& u);  // U rho U^dagger
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSet& keep);
DensityMatrix reduced_state(const PureState& psi, const QubitSet& keep);
SchmidtVector schmidt_decompose(const PureState& psi, const Bipartition& cut);
/// Two-qubit marginal on labels (i, j), i < j kept in ascending order.
DensityMatrix pair_marginal(const PureState& psi, int i, int j);

}  // namespace gq
