#pragma once

// Scalar functions whose signs carry the concavity/convexity arguments behind
// the G_q inequalities, plus a grid sign-audit harness for them.
//
//   M(x,q)        sign of h_q''(x)
//   H_q(x,y)      h_q(sqrt(x^2+y^2)) - h_q(x) - h_q(y)
//   l_q(x)        H_q(x, sqrt(1-x^2))
//   f_q(t)        h_q'(t)/t up to the factor 2^-q
//   Mtilde(t,q)   sign of f_q'(t)
//   Htilde_q(x,y) h_q^2(sqrt(x^2+y^2)) - h_q^2(x) - h_q^2(y)
//   ltilde_q(x)   Htilde_q(x, sqrt(1-x^2))

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gq {

enum class DiagnosticId { M, H, l, f, Mtilde, Htilde, ltilde };

std::string_view to_string(DiagnosticId id) noexcept;
/// 1 for functions of x or t, 2 for H and Htilde.
int arity(DiagnosticId id) noexcept;

struct DiagnosticFn {
  DiagnosticId id;
  double q;
};

/// Evaluates `fn` at `point` (1 or 2 coordinates). Domains:
///   M: 0 < x <= 1 (x = 1 is the limit value);  l, ltilde: 0 <= x <= 1;
///   f, Mtilde: 0 < t < 1;  H, Htilde: x, y >= 0 and x^2 + y^2 <= 1.
/// Throws BadDomain outside them and BadQ unless q > 1.
double diagnostic_eval(const DiagnosticFn& fn, std::span<const double> point);

double diagnostic_M(double x, double q);
double diagnostic_Mtilde(double t, double q);
double diagnostic_f(double t, double q);
double diagnostic_H(double x, double y, double q);
double diagnostic_Htilde(double x, double y, double q);
double diagnostic_l(double x, double q);
double diagnostic_ltilde(double x, double q);

/// Closed form of lim_{x -> 1} M(x, q); defined for q >= 1.
double lim_M_at_one(double q);

// Sign audits -----------------------------------------------------------------

enum class SignClaim { Positive, Negative, NonPositive, NonNegative, Zero };
std::string_view to_string(SignClaim c) noexcept;

/// Inclusive grid lo, lo+step, ..., hi with points rounded to 1e-12.
std::vector<double> make_grid(double lo, double hi, double step);

struct AuditSpec {
  std::string name;
  DiagnosticId id;
  std::vector<double> qs;
  std::vector<double> xs;
  std::vector<double> ys;  // used only by two-argument functions; points outside x^2+y^2<=1 are skipped
  SignClaim claim;
  double tolerance = 1e-9;
};

struct AuditSample {
  double q, x, y, value;
};

struct AuditTable {
  std::string name;
  DiagnosticId id;
  SignClaim claim;
  double tolerance;
  std::size_t points = 0;
  AuditSample min{}, max{};
  bool pass = false;
  std::vector<AuditSample> samples;
};

/// Strict claims need a margin: Positive passes iff min > tol, Negative iff
/// max < -tol. NonPositive: max <= tol; NonNegative: min >= -tol; Zero: both.
/// Throws BadParameter if any axis with several points is coarser than 0.01.
AuditTable sign_audit(const AuditSpec& spec);

/// The sign claims used by the inequality proofs, on 0.01 grids:
/// M > 0, Mtilde < 0, l_q(1/sqrt2) <= 0, ltilde_q(1/sqrt2) >= 0,
/// H_2 <= 0 and Htilde_2 == 0 (tolerance 1e-10).
std::vector<AuditSpec> standard_sign_audits(double step = 0.01);

}  // namespace gq
