#include "gq/inequalities.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "gq/error.hpp"
#include "gq/register.hpp"

namespace gq {

namespace {

void require_focus(const PureState& psi, int focus) {
  if (psi.n_qubits() < 2) fail(ErrorCode::BadFocus, "residuals need at least two qubits");
  if (focus < 0 || focus >= psi.n_qubits())
    fail(ErrorCode::BadFocus, "focus qubit " + std::to_string(focus) + " outside a " + std::to_string(psi.n_qubits()) + "-qubit register");
}

void require_regime(QParam q) {
  if (!q.analytic_regime()) fail(ErrorCode::RegimeError, "residuals are defined for 1 < q <= 2");
}

double focus_measure(const PureState& psi, int focus, QParam q) {
  return gq_pure(psi, Bipartition::single(psi.n_qubits(), focus), q).value;
}

DensityMatrix marginal(const PureState& psi, int a, int b) { return pair_marginal(psi, std::min(a, b), std::max(a, b)); }

ResidualReport power_residual(const PureState& psi, int focus, QParam q, double alpha) {
  require_focus(psi, focus);
  require_regime(q);
  ResidualReport r;
  r.focus = focus;
  r.direction = Direction::Monogamy;
  r.q = q.value();
  r.alpha = alpha;
  r.lhs = std::pow(focus_measure(psi, focus, q), alpha);
  for (int j = 0; j < psi.n_qubits(); ++j) {
    if (j == focus) continue;
    r.rhs_terms.push_back(std::pow(gq_two_qubit_mixed(marginal(psi, focus, j), q).value, alpha));
  }
  r.residual = r.lhs - r.rhs_sum();
  return r;
}

// Runs body(k) for k in [0, count), statically interleaved over workers.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
  const auto w = static_cast<std::size_t>(std::max(1, workers));
  if (w == 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t k = t; k < count; k += w) body(k);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void finish(AuditOutcome& out, const std::vector<PureState>& states) {
  out.pass = true;
  out.min_residual = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    out.min_residual = std::min(out.min_residual, out.rows[i].residual);
    if (!out.rows[i].pass && !out.first_violation) {
      out.pass = false;
      out.first_violation = i;
      out.offending_state = states[out.rows[i].state_id];
    }
  }
  if (out.rows.empty()) out.min_residual = 0.0;
}

void require_samples(int n, int samples) {
  if (n < 2 || n > kMaxQubits) fail(ErrorCode::SizeOutOfRange, "audits need 2..6 qubits");
  if (samples < 1) fail(ErrorCode::BadParameter, "audits need at least one sample");
}

}  // namespace

double ResidualReport::rhs_sum() const noexcept { return std::accumulate(rhs_terms.begin(), rhs_terms.end(), 0.0); }

ResidualReport monogamy_residual(const PureState& psi, int focus, QParam q) { return power_residual(psi, focus, q, 2.0); }

ResidualReport alpha_monogamy_residual(const PureState& psi, int focus, QParam q, double alpha) {
  if (!(alpha >= 2.0) || !std::isfinite(alpha)) fail(ErrorCode::BadAlpha, "alpha must be a finite value >= 2");
  return power_residual(psi, focus, q, alpha);
}

ResidualReport polygamy_residual(const PureState& psi, int focus, QParam q, const RoofConfig& cfg, RngSeed seed) {
  require_focus(psi, focus);
  require_regime(q);
  ResidualReport r;
  r.focus = focus;
  r.direction = Direction::Polygamy;
  r.q = q.value();
  r.alpha = 1.0;
  r.lhs = focus_measure(psi, focus, q);
  const Bipartition pair_cut = Bipartition::single(2, 0);
  for (int j = 0; j < psi.n_qubits(); ++j) {
    if (j == focus) continue;
    const auto res = roof_maximize(marginal(psi, focus, j), q, pair_cut, cfg, derive_seed(seed, static_cast<std::uint64_t>(j)));
    r.rhs_terms.push_back(res.value);
  }
  r.residual = r.rhs_sum() - r.lhs;
  return r;
}

double tau_indicator(const PureState& psi, int focus, QParam q) {
  if (!(q.value() < 2.0)) fail(ErrorCode::RegimeError, "tau_q is defined for 1 < q < 2");
  return monogamy_residual(psi, focus, q).residual;
}

double tau_w_closed_form(int n, QParam q) {
  if (n < 3) fail(ErrorCode::SizeOutOfRange, "the W-state indicator needs n >= 3");
  const double qv = q.value();
  const double nd = n;
  const double a = (nd - 2.0) / nd;
  const double b = std::sqrt(nd * nd - 4.0) / nd;
  auto term = [qv](double s) { return std::pow(1.0 - std::pow((1.0 + s) / 2.0, qv) - std::pow((1.0 - s) / 2.0, qv), 2.0 / qv); };
  return term(a) - (nd - 1.0) * term(b);
}

AuditOutcome monogamy_audit(const MonogamyAuditConfig& cfg, RngSeed seed) {
  require_samples(cfg.n_qubits, cfg.samples);
  for (double alpha : cfg.alphas)
    if (!(alpha >= 2.0)) fail(ErrorCode::BadAlpha, "alpha must be >= 2");
  std::vector<QParam> qs;
  for (double q : cfg.qs) qs.emplace_back(q);

  const auto samples = static_cast<std::size_t>(cfg.samples);
  const int n = cfg.n_qubits;
  const std::size_t per_state = qs.size() * cfg.alphas.size() * static_cast<std::size_t>(n);
  std::vector<PureState> states(samples, basis_state(n, 0));
  AuditOutcome out;
  out.rows.resize(samples * per_state);

  parallel_for(samples, cfg.workers, [&](std::size_t k) {
    states[k] = haar_random_pure(n, derive_seed(seed, k));
    std::size_t slot = k * per_state;
    for (const QParam& q : qs)
      for (double alpha : cfg.alphas)
        for (int focus = 0; focus < n; ++focus) {
          const auto r = alpha_monogamy_residual(states[k], focus, q, alpha);
          out.rows[slot++] = {k, focus, q.value(), alpha, r.lhs, r.rhs_sum(), r.residual, r.residual >= -cfg.tolerance};
        }
  });
  finish(out, states);
  return out;
}

AuditOutcome polygamy_audit(const PolygamyAuditConfig& cfg, RngSeed seed) {
  require_samples(cfg.n_qubits, cfg.samples);
  std::vector<QParam> qs;
  for (double q : cfg.qs) {
    qs.emplace_back(q);
    require_regime(qs.back());
  }
  const auto samples = static_cast<std::size_t>(cfg.samples);
  const int n = cfg.n_qubits;
  const std::size_t per_state = qs.size() * static_cast<std::size_t>(n);
  std::vector<PureState> states(samples, basis_state(n, 0));
  AuditOutcome out;
  out.rows.resize(samples * per_state);
  const Bipartition pair_cut = Bipartition::single(2, 0);

  parallel_for(samples, cfg.workers, [&](std::size_t k) {
    const RngSeed state_seed = derive_seed(seed, k);
    states[k] = haar_random_pure(n, state_seed);
    std::vector<DensityMatrix> marginals;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) marginals.push_back(pair_marginal(states[k], a, b));
    auto pair_index = [n](int a, int b) {
      if (a > b) std::swap(a, b);
      return static_cast<std::size_t>(a * n - a * (a + 1) / 2 + (b - a - 1));
    };
    std::size_t slot = k * per_state;
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
      std::vector<double> roof(marginals.size());
      for (std::size_t p = 0; p < marginals.size(); ++p)
        roof[p] = roof_maximize(marginals[p], qs[qi], pair_cut, cfg.roof, derive_seed(state_seed, 1 + qi * marginals.size() + p)).value;
      for (int focus = 0; focus < n; ++focus) {
        const double lhs = focus_measure(states[k], focus, qs[qi]);
        double sum = 0.0;
        for (int j = 0; j < n; ++j)
          if (j != focus) sum += roof[pair_index(focus, j)];
        const double residual = sum - lhs;
        out.rows[slot++] = {k, focus, qs[qi].value(), 1.0, lhs, sum, residual, residual >= -cfg.tolerance};
      }
    }
  });
  finish(out, states);
  return out;
}

}  // namespace gq
