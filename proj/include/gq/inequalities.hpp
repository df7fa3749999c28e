#pragma once
// Monogamy and polygamy residuals of the G_q-concurrence on pure states,
// the tau_q entanglement indicator, and Monte-Carlo audits over Haar samples.
// Qubit labels here are 0-based.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gq/convex_roof.hpp"
#include "gq/measures.hpp"
#include "gq/rng.hpp"
#include "gq/states.hpp"

namespace gq {

enum class Direction { Monogamy, Polygamy };

struct ResidualReport {
  int focus = 0;
  double lhs = 0.0;
  std::vector<double> rhs_terms;  // one per other qubit, ascending label
  double residual = 0.0;          // lhs - sum (monogamy) or sum - lhs (polygamy)
  Direction direction = Direction::Monogamy;
  double q = 2.0;
  double alpha = 2.0;

  double rhs_sum() const noexcept;
};

/// C_q^2(focus | rest) - sum_j C_q^2(rho_{focus,j}), pairwise terms through h_q(C).
/// Throws BadFocus for a label outside the register and RegimeError for q > 2.
ResidualReport monogamy_residual(const PureState& psi, int focus, QParam q);

/// Same with exponent alpha in place of 2. Throws BadAlpha for alpha < 2.
ResidualReport alpha_monogamy_residual(const PureState& psi, int focus, QParam q, double alpha);

/// sum_j roof_maximize(rho_{focus,j}) - C_q(focus | rest). Marginal j is
/// optimized with seed derive_seed(seed, j). RegimeError for q > 2.
ResidualReport polygamy_residual(const PureState& psi, int focus, QParam q, const RoofConfig& cfg, RngSeed seed);

/// tau_q at `focus`; the monogamy residual restricted to 1 < q < 2.
double tau_indicator(const PureState& psi, int focus, QParam q);

/// Closed-form tau_q of the n-qubit W state, n >= 3 (SizeOutOfRange otherwise).
double tau_w_closed_form(int n, QParam q);

// Monte-Carlo audits -----------------------------------------------------------

struct ResidualRow {
  std::size_t state_id = 0;
  int focus = 0;
  double q = 0.0;
  double alpha = 2.0;
  double lhs = 0.0;
  double rhs_sum = 0.0;
  double residual = 0.0;
  bool pass = false;
};

struct AuditOutcome {
  std::vector<ResidualRow> rows;  // ordered by state, then q, alpha, focus
  bool pass = true;
  double min_residual = 0.0;
  std::optional<std::size_t> first_violation;  // index into rows
  std::optional<PureState> offending_state;
};

struct MonogamyAuditConfig {
  int n_qubits = 3;
  int samples = 500;
  std::vector<double> qs{1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
  std::vector<double> alphas{2.0};
  double tolerance = 1e-9;
  int workers = 1;
};

struct PolygamyAuditConfig {
  int n_qubits = 3;
  int samples = 100;
  std::vector<double> qs{1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
  RoofConfig roof{};
  double tolerance = 1e-6;
  int workers = 1;
};

/// State k is haar_random_pure(n, derive_seed(seed, k)); every focus is checked.
AuditOutcome monogamy_audit(const MonogamyAuditConfig& cfg, RngSeed seed);
/// As monogamy_audit with roof-based pairwise terms. Each pair marginal is
/// optimized once per q and shared between its two focus qubits.
AuditOutcome polygamy_audit(const PolygamyAuditConfig& cfg, RngSeed seed);

}  // namespace gq
