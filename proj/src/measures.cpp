#include "gq/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gq/error.hpp"

namespace gq {

namespace {

constexpr double kRadicandClamp = 1e-12;
constexpr double kRankTol = 1e-12;

void require_two_qubits(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) fail(ErrorCode::BadDimension, "two-qubit state required");
}

void require_analytic(QParam q) {
  if (!q.analytic_regime())
    fail(ErrorCode::RegimeError, "the concurrence formula holds only for 1 < q <= 2 (got q = " + std::to_string(q.value()) + ")");
}

}  // namespace

QParam::QParam(double q) : q_(q) {
  if (!std::isfinite(q) || !(q > 1.0)) fail(ErrorCode::BadQ, "q must be a finite real > 1");
}

double gq_of_spectrum(std::span<const double> spectrum, QParam q) {
  if (spectrum.empty()) fail(ErrorCode::BadParameter, "empty spectrum");
  const double qv = q.value();
  const auto top = std::max_element(spectrum.begin(), spectrum.end());
  double rest = 0.0;
  double rest_pow = 0.0;
  for (auto it = spectrum.begin(); it != spectrum.end(); ++it) {
    if (it == top) continue;
    const double l = std::max(*it, 0.0);
    rest += l;
    rest_pow += std::pow(l, qv);
  }
  rest = std::min(rest, 1.0);
  // 1 - (1 - rest)^q - sum_{others} lambda^q
  double radicand = -std::expm1(qv * std::log1p(-rest)) - rest_pow;
  if (radicand < 0.0) {
    if (radicand < -kRadicandClamp) fail(ErrorCode::BadDomain, "spectrum is not a probability vector");
    radicand = 0.0;
  }
  return std::pow(radicand, 1.0 / qv);
}

MeasureValue gq_pure(const SchmidtVector& lambdas, QParam q) {
  return {gq_of_spectrum(lambdas.lambdas(), q), MeasureKind::GqConcurrence};
}

MeasureValue gq_pure(const PureState& psi, const Bipartition& cut, QParam q) {
  return gq_pure(schmidt_decompose(psi, cut), q);
}

double gq_of_density(const DensityMatrix& rho, QParam q) {
  auto ev = hermitian_eigenvalues(rho.matrix());
  for (double& l : ev) l = std::max(l, 0.0);
  return gq_of_spectrum(ev, q);
}

MeasureValue concurrence_pure(const SchmidtVector& lambdas) {
  if (lambdas.rank(kRankTol) > 2) fail(ErrorCode::BadRank, "concurrence needs at most two Schmidt coefficients");
  const double l1 = lambdas[0];
  const double l2 = lambdas.size() > 1 ? lambdas[1] : 0.0;
  return {std::min(1.0, 2.0 * std::sqrt(l1 * l2)), MeasureKind::Concurrence};
}

std::array<double, 4> spin_flip_roots(const DensityMatrix& rho) {
  require_two_qubits(rho);
  // sy (x) sy in the computational basis.
  ComplexMatrix flip(4, 4);
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const ComplexMatrix root = psd_sqrt(rho.matrix());
  // T = sqrt(rho) F sqrt(rho)* satisfies T T^dagger = sqrt(rho) rho~ sqrt(rho),
  // so mu_i are its singular values. They are read off the Hermitian dilation
  // [[0, T], [T^dagger, 0]] whose spectrum is {+-mu_i}; this keeps small mu_i
  // accurate to roundoff instead of to its square root.
  const ComplexMatrix t = root * flip * root.conj();
  ComplexMatrix dilation(8, 8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      dilation(i, 4 + j) = t(i, j);
      dilation(4 + j, i) = std::conj(t(i, j));
    }
  const auto ev = hermitian_eigenvalues(dilation);
  return {std::max(ev[0], 0.0), std::max(ev[1], 0.0), std::max(ev[2], 0.0), std::max(ev[3], 0.0)};
}

MeasureValue wootters_concurrence(const DensityMatrix& rho) {
  const auto mu = spin_flip_roots(rho);
  return {std::clamp(mu[0] - mu[1] - mu[2] - mu[3], 0.0, 1.0), MeasureKind::Concurrence};
}

MeasureValue coa_two_qubit(const DensityMatrix& rho) {
  const auto mu = spin_flip_roots(rho);
  return {mu[0] + mu[1] + mu[2] + mu[3], MeasureKind::CoA};
}

double h_q_radicand(double x, QParam q) {
  if (!(x >= -kClampTol && x <= 1.0 + kClampTol)) fail(ErrorCode::BadDomain, "h_q needs x in [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  const double qv = q.value();
  const double u = std::clamp(std::sqrt((1.0 - x) * (1.0 + x)), 0.0, 1.0);
  // Smaller Schmidt coefficient (1 - u)/2 written without cancellation.
  const double small = x * x / (2.0 * (1.0 + u));
  return std::max(-std::expm1(qv * std::log1p(-small)) - std::pow(small, qv), 0.0);
}

double h_q(double x, QParam q) { return std::pow(h_q_radicand(x, q), 1.0 / q.value()); }

MeasureValue gq_two_qubit_mixed(const DensityMatrix& rho, QParam q) {
  require_analytic(q);
  return {h_q(wootters_concurrence(rho).value, q), MeasureKind::GqConcurrence};
}

MeasureValue gq_lower_bound_2xd(MeasureValue concurrence, QParam q) {
  require_analytic(q);
  if (concurrence.kind != MeasureKind::Concurrence) fail(ErrorCode::BadParameter, "a concurrence value is required");
  return {h_q(concurrence.value, q), MeasureKind::LowerBound};
}

MeasureValue gqcoa_lower_bound(const DensityMatrix& rho, QParam q) {
  require_analytic(q);
  return {h_q(coa_two_qubit(rho).value, q), MeasureKind::LowerBound};
}

}  // namespace gq
