#include "gq/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gq/error.hpp"
#include "gq/measures.hpp"

namespace gq {

namespace {

constexpr double kDiskTol = 1e-10;
constexpr double kMaxAuditStep = 0.01;

void require_q(double q) { (void)QParam(q); }

void require_open_unit(double t, const char* name) {
  if (!(t > 0.0 && t < 1.0)) fail(ErrorCode::BadDomain, std::string(name) + " needs 0 < t < 1");
}

void require_closed_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) fail(ErrorCode::BadDomain, std::string(name) + " needs 0 <= x <= 1");
}

// sqrt(1 - x^2) and 1 - sqrt(1 - x^2), the latter without cancellation.
struct Root {
  double u;
  double one_minus_u;
  double one_minus_x2;
};

Root root_of(double x) {
  const double one_minus_x2 = (1.0 - x) * (1.0 + x);
  const double u = std::sqrt(std::max(one_minus_x2, 0.0));
  return {u, x * x / (1.0 + u), one_minus_x2};
}

double disk_radius(double x, double y) {
  if (!(x >= 0.0 && y >= 0.0)) fail(ErrorCode::BadDomain, "H needs x, y >= 0");
  const double r2 = x * x + y * y;
  if (r2 > 1.0 + kDiskTol) fail(ErrorCode::BadDomain, "H needs x^2 + y^2 <= 1");
  return std::sqrt(std::min(r2, 1.0));
}

// 2^q - (1+s)^q - (1-s)^q = 2^q * h_q(sqrt(1-s^2))^q, evaluated stably.
double bracket(double s, double q) {
  const double x = std::sqrt(std::max((1.0 - s) * (1.0 + s), 0.0));
  return std::exp2(q) * h_q_radicand(x, QParam(q));
}

}  // namespace

std::string_view to_string(DiagnosticId id) noexcept {
  switch (id) {
    case DiagnosticId::M: return "M";
    case DiagnosticId::H: return "H";
    case DiagnosticId::l: return "l";
    case DiagnosticId::f: return "f";
    case DiagnosticId::Mtilde: return "Mtilde";
    case DiagnosticId::Htilde: return "Htilde";
    case DiagnosticId::ltilde: return "ltilde";
  }
  return "?";
}

int arity(DiagnosticId id) noexcept { return id == DiagnosticId::H || id == DiagnosticId::Htilde ? 2 : 1; }

double lim_M_at_one(double q) {
  if (!(q >= 1.0)) fail(ErrorCode::BadQ, "lim M needs q >= 1");
  const double q2 = q * q;
  const double q3 = q2 * q;
  const double p = std::exp2(q);
  return (-12.0 * (q3 - 3.0 * q2 + 3.0 * q - 1.0) + (p - 2.0) * (-2.0 * q3 + 12.0 * q2 - 16.0 * q + 6.0)) / (3.0 * p);
}

double diagnostic_M(double x, double q) {
  require_q(q);
  if (!(x > 0.0 && x <= 1.0)) fail(ErrorCode::BadDomain, "M needs 0 < x <= 1");
  if (x == 1.0) return lim_M_at_one(q);
  const auto [u, omu, one_minus_x2] = root_of(x);
  const double opu = 1.0 + u;
  const double g = x * (std::pow(opu, q - 1.0) - std::pow(omu, q - 1.0)) / u;
  const double xi1 = (1.0 - q) / std::exp2(q) * g * g;
  const double xi2 = h_q_radicand(x, QParam(q));
  const double xi3 = std::pow(opu, q - 2.0) / one_minus_x2 * (opu / u - x * x * (q - 1.0));
  const double xi4 = std::pow(omu, q - 2.0) / one_minus_x2 * (omu / u + x * x * (q - 1.0));
  return xi1 + xi2 * (xi3 - xi4);
}

double diagnostic_Mtilde(double t, double q) {
  require_q(q);
  require_open_unit(t, "Mtilde");
  const auto [u, omu, one_minus_t2] = root_of(t);
  const double opu = 1.0 + u;
  const double diff = std::pow(opu, q - 1.0) - std::pow(omu, q - 1.0);
  const double a = (1.0 - q) / std::exp2(q) * t * diff * diff / one_minus_t2;
  const double b = h_q_radicand(t, QParam(q));
  const double c = std::pow(opu, q - 2.0) / one_minus_t2 * (t * opu / u - t * (q - 1.0)) -
                   std::pow(omu, q - 2.0) / one_minus_t2 * (t * omu / u + t * (q - 1.0));
  return a + b * c;
}

double diagnostic_f(double t, double q) {
  require_q(q);
  require_open_unit(t, "f");
  const auto [u, omu, one_minus_t2] = root_of(t);
  (void)one_minus_t2;
  const double diff = std::pow(1.0 + u, q - 1.0) - std::pow(omu, q - 1.0);
  return std::pow(h_q_radicand(t, QParam(q)), 1.0 / q - 1.0) * diff / u;
}

double diagnostic_H(double x, double y, double q) {
  const QParam qp(q);
  const double r = disk_radius(x, y);
  return h_q(r, qp) - h_q(x, qp) - h_q(y, qp);
}

double diagnostic_Htilde(double x, double y, double q) {
  const QParam qp(q);
  const double r = disk_radius(x, y);
  const double hr = h_q(r, qp);
  const double hx = h_q(x, qp);
  const double hy = h_q(y, qp);
  return hr * hr - hx * hx - hy * hy;
}

double diagnostic_l(double x, double q) {
  require_q(q);
  require_closed_unit(x, "l");
  const double u = std::sqrt(std::max((1.0 - x) * (1.0 + x), 0.0));
  return 0.5 * (std::pow(std::exp2(q) - 2.0, 1.0 / q) - std::pow(bracket(u, q), 1.0 / q) - std::pow(bracket(x, q), 1.0 / q));
}

double diagnostic_ltilde(double x, double q) {
  require_q(q);
  require_closed_unit(x, "ltilde");
  const double u = std::sqrt(std::max((1.0 - x) * (1.0 + x), 0.0));
  return 0.25 * (std::pow(std::exp2(q) - 2.0, 2.0 / q) - std::pow(bracket(u, q), 2.0 / q) - std::pow(bracket(x, q), 2.0 / q));
}

double diagnostic_eval(const DiagnosticFn& fn, std::span<const double> point) {
  if (static_cast<int>(point.size()) != arity(fn.id))
    fail(ErrorCode::BadDomain, std::string(to_string(fn.id)) + " takes " + std::to_string(arity(fn.id)) + " coordinate(s)");
  switch (fn.id) {
    case DiagnosticId::M: return diagnostic_M(point[0], fn.q);
    case DiagnosticId::H: return diagnostic_H(point[0], point[1], fn.q);
    case DiagnosticId::l: return diagnostic_l(point[0], fn.q);
    case DiagnosticId::f: return diagnostic_f(point[0], fn.q);
    case DiagnosticId::Mtilde: return diagnostic_Mtilde(point[0], fn.q);
    case DiagnosticId::Htilde: return diagnostic_Htilde(point[0], point[1], fn.q);
    case DiagnosticId::ltilde: return diagnostic_ltilde(point[0], fn.q);
  }
  fail(ErrorCode::BadParameter, "unknown diagnostic");
}

std::string_view to_string(SignClaim c) noexcept {
  switch (c) {
    case SignClaim::Positive: return "> 0";
    case SignClaim::Negative: return "< 0";
    case SignClaim::NonPositive: return "<= 0";
    case SignClaim::NonNegative: return ">= 0";
    case SignClaim::Zero: return "== 0";
  }
  return "?";
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) fail(ErrorCode::BadParameter, "grid needs step > 0 and hi >= lo");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(count);
  for (std::size_t k = 0; k < count; ++k) g[k] = std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12;
  return g;
}

namespace {

void check_spacing(const std::vector<double>& axis, const char* name) {
  for (std::size_t k = 1; k < axis.size(); ++k)
    if (axis[k] - axis[k - 1] > kMaxAuditStep + 1e-12)
      fail(ErrorCode::BadParameter, std::string("audit grid step on ") + name + " exceeds 0.01");
}

bool claim_holds(SignClaim c, double lo, double hi, double tol) {
  switch (c) {
    case SignClaim::Positive: return lo > tol;
    case SignClaim::Negative: return hi < -tol;
    case SignClaim::NonPositive: return hi <= tol;
    case SignClaim::NonNegative: return lo >= -tol;
    case SignClaim::Zero: return lo >= -tol && hi <= tol;
  }
  return false;
}

}  // namespace

AuditTable sign_audit(const AuditSpec& spec) {
  check_spacing(spec.qs, "q");
  check_spacing(spec.xs, "x");
  const bool two_d = arity(spec.id) == 2;
  if (two_d) check_spacing(spec.ys, "y");

  AuditTable t;
  t.name = spec.name;
  t.id = spec.id;
  t.claim = spec.claim;
  t.tolerance = spec.tolerance;
  t.min.value = std::numeric_limits<double>::infinity();
  t.max.value = -std::numeric_limits<double>::infinity();
  auto record = [&](double q, double x, double y, double v) {
    const AuditSample s{q, x, y, v};
    if (v < t.min.value) t.min = s;
    if (v > t.max.value) t.max = s;
    t.samples.push_back(s);
  };
  for (double q : spec.qs) {
    const DiagnosticFn fn{spec.id, q};
    for (double x : spec.xs) {
      if (!two_d) {
        const double p[1] = {x};
        record(q, x, 0.0, diagnostic_eval(fn, p));
        continue;
      }
      for (double y : spec.ys) {
        if (x * x + y * y > 1.0 + kDiskTol) continue;
        const double p[2] = {x, y};
        record(q, x, y, diagnostic_eval(fn, p));
      }
    }
  }
  t.points = t.samples.size();
  t.pass = t.points > 0 && claim_holds(spec.claim, t.min.value, t.max.value, spec.tolerance);
  return t;
}

std::vector<AuditSpec> standard_sign_audits(double step) {
  const auto q_open = make_grid(1.05, 1.95, step);
  const auto x_half_open = make_grid(step, 1.0, step);
  const auto t_open = make_grid(step, 1.0 - step, step);
  const auto unit = make_grid(0.0, 1.0, step);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {
      {"M > 0 on (0,1] x [1.05,1.95]", DiagnosticId::M, q_open, x_half_open, {}, SignClaim::Positive, 1e-9},
      {"Mtilde < 0 on (0,1) x [1.05,1.95]", DiagnosticId::Mtilde, q_open, t_open, {}, SignClaim::Negative, 1e-9},
      {"l_q(1/sqrt2) <= 0 for q in [1.05,1.95]", DiagnosticId::l, q_open, {inv_sqrt2}, {}, SignClaim::NonPositive, 1e-9},
      {"ltilde_q(1/sqrt2) >= 0 for q in [1.05,1.95]", DiagnosticId::ltilde, q_open, {inv_sqrt2}, {}, SignClaim::NonNegative, 1e-9},
      {"H_2 <= 0 on R'", DiagnosticId::H, {2.0}, unit, unit, SignClaim::NonPositive, 1e-9},
      {"Htilde_2 == 0 on R'", DiagnosticId::Htilde, {2.0}, unit, unit, SignClaim::Zero, 1e-10},
  };
}

}  // namespace gq
