#include "gq/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gq/error.hpp"
#include "gq/kernels.hpp"

namespace gq {

namespace {

void check_qubits(int n, int lo, int hi) {
  if (n < lo || n > hi)
    fail(ErrorCode::SizeOutOfRange, "qubit count " + std::to_string(n) + " outside " + std::to_string(lo) + ".." +
                                        std::to_string(hi));
}

std::size_t dim_of(int n) { return std::size_t{1} << n; }

}  // namespace

PureState::PureState(int n_qubits, std::vector<cplx> amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
  check_qubits(n_, 1, kMaxQubits);
  if (amps_.size() != dim_of(n_)) fail(ErrorCode::BadDimension, "amplitude count must be 2^n");
  for (const cplx& a : amps_)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) fail(ErrorCode::NonFinite, "amplitude is not finite");
  const double norm = kernels::norm2(amps_);
  if (std::abs(norm - 1.0) > kNormTol) fail(ErrorCode::InvalidState, "state is not normalized (sum |a|^2 = " + std::to_string(norm) + ")");
}

PureState PureState::normalized(int n_qubits, std::vector<cplx> amplitudes) {
  const double norm = kernels::norm2(amplitudes);
  if (!(norm > 0.0) || !std::isfinite(norm)) fail(ErrorCode::InvalidState, "cannot normalize a zero or non-finite vector");
  kernels::scale(1.0 / std::sqrt(norm), amplitudes);
  return PureState(n_qubits, std::move(amplitudes));
}

DensityMatrix::DensityMatrix(int n_qubits, ComplexMatrix matrix) : n_(n_qubits), m_(std::move(matrix)) {
  check_qubits(n_, 1, kMaxQubits);
  if (!m_.square() || m_.rows() != dim_of(n_)) fail(ErrorCode::BadDimension, "density matrix must be 2^n x 2^n");
  if (!m_.all_finite()) fail(ErrorCode::NonFinite, "density matrix has NaN or Inf entries");
  if (m_.hermiticity_error() > kHermitianTol) fail(ErrorCode::NonHermitianInput, "density matrix is not Hermitian");
  const cplx tr = m_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) fail(ErrorCode::InvalidState, "density matrix trace is not 1");
  const auto ev = hermitian_eigenvalues(m_);
  if (ev.back() < -kPsdTol) fail(ErrorCode::InvalidState, "density matrix has eigenvalue " + std::to_string(ev.back()));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.n_qubits(), ComplexMatrix::outer(psi.amplitudes()));
}

double DensityMatrix::purity() const {
  double p = 0.0;
  for (const cplx& z : m_.entries()) p += std::norm(z);
  return p;
}

PureState w_state(int n) {
  check_qubits(n, 2, kMaxQubits);
  std::vector<cplx> a(dim_of(n));
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int l = 0; l < n; ++l) a[std::size_t{1} << (n - 1 - l)] = amp;
  return PureState::normalized(n, std::move(a));
}

PureState ghz_state(int n) {
  check_qubits(n, 2, kMaxQubits);
  std::vector<cplx> a(dim_of(n));
  a.front() = a.back() = 1.0 / std::sqrt(2.0);
  return PureState::normalized(n, std::move(a));
}

PureState basis_state(int n, std::size_t index) {
  check_qubits(n, 1, kMaxQubits);
  if (index >= dim_of(n)) fail(ErrorCode::BadParameter, "basis index out of range");
  std::vector<cplx> a(dim_of(n));
  a[index] = 1.0;
  return PureState(n, std::move(a));
}

PureState tensor(const PureState& a, const PureState& b) {
  const int n = a.n_qubits() + b.n_qubits();
  check_qubits(n, 1, kMaxQubits);
  return PureState::normalized(n, kron(a.amplitudes(), b.amplitudes()));
}

PureState product_state(std::span<const PureState> locals) {
  if (locals.empty()) fail(ErrorCode::SizeOutOfRange, "product of zero factors");
  check_qubits(static_cast<int>(locals.size()), 1, kMaxQubits);
  std::vector<cplx> amps{1.0};
  for (const PureState& s : locals) {
    if (s.n_qubits() != 1) fail(ErrorCode::BadDimension, "product_state factors must be single qubits");
    amps = kron(amps, s.amplitudes());
  }
  return PureState::normalized(static_cast<int>(locals.size()), std::move(amps));
}

PureState permute_qubits(const PureState& psi, std::span<const int> perm) {
  const int n = psi.n_qubits();
  if (static_cast<int>(perm.size()) != n) fail(ErrorCode::BadParameter, "permutation length must equal qubit count");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) fail(ErrorCode::BadParameter, "not a permutation");
    seen[p] = true;
  }
  std::vector<cplx> out(psi.dim());
  for (std::size_t idx = 0; idx < psi.dim(); ++idx) {
    std::size_t target = 0;
    for (int l = 0; l < n; ++l)
      if ((idx >> (n - 1 - l)) & 1u) target |= std::size_t{1} << (n - 1 - perm[l]);
    out[target] = psi[idx];
  }
  return PureState::normalized(n, std::move(out));
}

DensityMatrix werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::BadParameter, "Werner weight must lie in [0,1]");
  ComplexMatrix m = ComplexMatrix::identity(4);
  m *= (1.0 - p) / 4.0;
  const double h = p / 2.0;
  m(0, 0) += h;
  m(0, 3) += h;
  m(3, 0) += h;
  m(3, 3) += h;
  return DensityMatrix(2, std::move(m));
}

PureState haar_random_pure(int n, RngSeed seed) {
  check_qubits(n, 1, kMaxQubits);
  Rng rng(seed);
  std::vector<cplx> a(dim_of(n));
  for (cplx& z : a) z = rng.complex_gaussian();
  return PureState::normalized(n, std::move(a));
}

DensityMatrix random_mixed(int n, int rank, RngSeed seed) {
  check_qubits(n, 1, kMaxQubits);
  const std::size_t d = dim_of(n);
  if (rank < 1 || static_cast<std::size_t>(rank) > d) fail(ErrorCode::BadRank, "rank must lie in 1..2^n");
  // Amplitudes psi(i, a) of a pure state on system (x) rank-dimensional ancilla support.
  Rng rng(seed);
  ComplexMatrix psi(d, static_cast<std::size_t>(rank));
  for (cplx& z : psi.entries()) z = rng.complex_gaussian();
  ComplexMatrix rho = multiply_adjoint(psi, psi);
  const double tr = rho.trace().real();
  rho *= 1.0 / tr;
  for (std::size_t i = 0; i < d; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return DensityMatrix(n, std::move(rho));
}

ComplexMatrix haar_unitary_2x2(Rng& rng) {
  ComplexMatrix u(2, 2);
  for (cplx& z : u.entries()) z = rng.complex_gaussian();
  orthonormalize_columns(u);
  for (std::size_t c = 0; c < 2; ++c) {
    const std::size_t lead = std::abs(u(0, c)) > 0.0 ? 0 : 1;
    const cplx phase = std::conj(u(lead, c)) / std::abs(u(lead, c));
    for (std::size_t r = 0; r < 2; ++r) u(r, c) *= phase;
  }
  return u;
}

ComplexMatrix random_local_unitary(int n, RngSeed seed) {
  check_qubits(n, 1, kMaxQubits);
  Rng rng(seed);
  ComplexMatrix u = ComplexMatrix::identity(1);
  for (int l = 0; l < n; ++l) u = kron(u, haar_unitary_2x2(rng));
  return u;
}

DensityMatrix conjugate_by(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) fail(ErrorCode::BadDimension, "unitary must match the register");
  ComplexMatrix m = multiply_adjoint(u * rho.matrix(), u);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) m(j, i) = std::conj(m(i, j));
  }
  return DensityMatrix(rho.n_qubits(), std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSet& keep) {
  if (keep.n_qubits() != rho.n_qubits()) fail(ErrorCode::BadSubsystem, "kept set is for a different register size");
  return DensityMatrix(keep.size(), partial_trace(rho.matrix(), keep));
}

DensityMatrix reduced_state(const PureState& psi, const QubitSet& keep) {
  if (keep.n_qubits() != psi.n_qubits()) fail(ErrorCode::BadSubsystem, "kept set is for a different register size");
  ComplexMatrix m = reduced_from_pure(psi.amplitudes(), keep);
  const double tr = m.trace().real();
  m *= 1.0 / tr;
  return DensityMatrix(keep.size(), std::move(m));
}

SchmidtVector schmidt_decompose(const PureState& psi, const Bipartition& cut) {
  if (cut.n_qubits() != psi.n_qubits()) fail(ErrorCode::BadCut, "cut is for a different register size");
  return schmidt_spectrum(psi.amplitudes(), cut);
}

DensityMatrix pair_marginal(const PureState& psi, int i, int j) {
  if (i == j) fail(ErrorCode::BadSubsystem, "pair marginal needs two distinct qubits");
  return reduced_state(psi, QubitSet(psi.n_qubits(), {std::min(i, j), std::max(i, j)}));
}

}  // namespace gq
