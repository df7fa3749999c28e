#pragma once

// Closed-form entanglement quantities built on the G_q-concurrence
//   C_q(|phi>) = (1 - sum_i lambda_i^q)^(1/q),  q > 1,
// and its relation to the two-qubit concurrence through h_q.

#include <array>
#include <span>

#include "gq/linalg.hpp"
#include "gq/states.hpp"

namespace gq {

/// Measure parameter q > 1. The analytic two-qubit formula is only valid
/// in the regime 1 < q <= 2.
class QParam {
 public:
  explicit QParam(double q);
  double value() const noexcept { return q_; }
  bool analytic_regime() const noexcept { return q_ <= 2.0; }

 private:
  double q_;
};

enum class MeasureKind { GqConcurrence, Concurrence, GqCoA, CoA, LowerBound };

struct MeasureValue {
  double value = 0.0;
  MeasureKind kind = MeasureKind::GqConcurrence;
};

/// (1 - sum lambda^q)^(1/q) for any probability spectrum. The largest
/// entry is handled through expm1/log1p of the remaining mass.
double gq_of_spectrum(std::span<const double> spectrum, QParam q);

MeasureValue gq_pure(const SchmidtVector& lambdas, QParam q);
MeasureValue gq_pure(const PureState& psi, const Bipartition& cut, QParam q);

/// G_q(rho) = (1 - Tr rho^q)^(1/q) of a single density operator.
double gq_of_density(const DensityMatrix& rho, QParam q);

/// 2 sqrt(lambda_1 lambda_2) for a 2 (x) d cut. Throws BadRank when more
/// than two coefficients exceed 1e-12.
MeasureValue concurrence_pure(const SchmidtVector& lambdas);

/// Descending mu_i with mu_i^2 the eigenvalues of sqrt(rho) rho~ sqrt(rho),
/// rho~ = (sy (x) sy) rho* (sy (x) sy).
std::array<double, 4> spin_flip_roots(const DensityMatrix& rho);
MeasureValue wootters_concurrence(const DensityMatrix& rho);
/// Two-qubit concurrence of assistance, sum_i mu_i.
MeasureValue coa_two_qubit(const DensityMatrix& rho);

/// [1 - ((1+u)/2)^q - ((1-u)/2)^q]^(1/q) with u = sqrt(1 - x^2).
/// Accepts x in [-1e-10, 1 + 1e-10] (clamped); BadDomain otherwise.
double h_q(double x, QParam q);
/// h_q(x)^q, i.e. the bracket 1 - ((1+u)/2)^q - ((1-u)/2)^q, same domain.
double h_q_radicand(double x, QParam q);

/// h_q(C(rho)); RegimeError for q > 2.
MeasureValue gq_two_qubit_mixed(const DensityMatrix& rho, QParam q);
/// h_q(C) as a lower bound for a 2 (x) d state of concurrence C.
MeasureValue gq_lower_bound_2xd(MeasureValue concurrence, QParam q);
/// h_q(C^a(rho)), a lower bound on the G_q-concurrence of assistance.
MeasureValue gqcoa_lower_bound(const DensityMatrix& rho, QParam q);

}  // namespace gq
