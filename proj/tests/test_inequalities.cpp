#include <doctest.h>

#include <cmath>

#include "gq/inequalities.hpp"
#include "support.hpp"

using namespace gq;

namespace {

double h_one(double q) { return std::pow(1.0 - std::pow(2.0, 1.0 - q), 1.0 / q); }

PureState product3() {
  const PureState a(1, {0.6, cplx(0.0, 0.8)});
  const PureState b(1, {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)});
  const PureState c(1, {0.0, 1.0});
  const PureState locals[] = {a, b, c};
  return product_state(locals);
}

// |phi>_A (x) |phi>_BC with an entangled BC factor, relabelled so the
// lone qubit sits at `lone`.
PureState biseparable(int lone, RngSeed seed) {
  const auto single = haar_random_pure(1, derive_seed(seed, 0));
  const auto pair = haar_random_pure(2, derive_seed(seed, 1));
  const auto t = tensor(single, pair);
  std::array<int, 3> perm{};
  perm[0] = lone;
  int next = 0;
  for (int l = 1; l < 3; ++l) {
    if (next == lone) ++next;
    perm[static_cast<std::size_t>(l)] = next++;
  }
  return permute_qubits(t, perm);
}

}  // namespace

TEST_CASE("monogamy residual fixtures") {
  SUBCASE("W3 at q = 2 is exactly saturated") {
    for (int f = 0; f < 3; ++f) {
      const auto r = monogamy_residual(w_state(3), f, QParam(2.0));
      CHECK(std::abs(r.lhs - 4.0 / 9.0) < 1e-12);
      CHECK(std::abs(r.rhs_sum() - 4.0 / 9.0) < 1e-12);
      CHECK(std::abs(r.residual) <= 1e-10);
    }
  }
  SUBCASE("GHZ3 leaves h_q(1)^2") {
    for (double q : {1.1, 1.5, 2.0}) {
      const auto r = monogamy_residual(ghz_state(3), 0, QParam(q));
      CHECK(std::abs(r.residual - h_one(q) * h_one(q)) < 1e-12);
      for (double t : r.rhs_terms) CHECK(t == 0.0);
    }
  }
  SUBCASE("product states give zeros") {
    const auto r = monogamy_residual(product3(), 1, QParam(1.4));
    CHECK(r.lhs < 1e-12);
    CHECK(r.rhs_sum() < 1e-12);
    CHECK(std::abs(r.residual) < 1e-12);
  }
  SUBCASE("report layout") {
    const auto r = monogamy_residual(w_state(4), 2, QParam(1.5));
    CHECK(r.focus == 2);
    CHECK(r.rhs_terms.size() == 3);
    CHECK(r.direction == Direction::Monogamy);
    CHECK(r.q == 1.5);
    CHECK(r.alpha == 2.0);
    CHECK(std::abs(r.residual - (r.lhs - r.rhs_sum())) <= 1e-12);
  }
  SUBCASE("errors") {
    CHECK_CODE(monogamy_residual(w_state(3), 3, QParam(1.5)), ErrorCode::BadFocus);
    CHECK_CODE(monogamy_residual(w_state(3), -1, QParam(1.5)), ErrorCode::BadFocus);
    CHECK_CODE(monogamy_residual(w_state(3), 0, QParam(2.5)), ErrorCode::RegimeError);
  }
}

TEST_CASE("alpha-power monogamy") {
  const auto psi = haar_random_pure(3, RngSeed{3});
  const auto r2 = monogamy_residual(psi, 1, QParam(1.7));
  const auto a2 = alpha_monogamy_residual(psi, 1, QParam(1.7), 2.0);
  CHECK(r2.residual == a2.residual);
  CHECK(alpha_monogamy_residual(w_state(3), 0, QParam(1.5), 3.0).residual >= 0.0);
  const auto g = alpha_monogamy_residual(ghz_state(4), 0, QParam(2.0), 4.0);
  CHECK(std::abs(g.residual - 0.25) < 1e-12);
  CHECK_CODE(alpha_monogamy_residual(psi, 0, QParam(1.5), 1.9), ErrorCode::BadAlpha);

  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto phi = haar_random_pure(3 + static_cast<int>(s % 2), RngSeed{s});
    for (double alpha : {2.0, 2.5, 3.0, 4.0})
      for (double q : {1.2, 1.6, 2.0}) CHECK(alpha_monogamy_residual(phi, 0, QParam(q), alpha).residual >= -1e-9);
  }
}

TEST_CASE("polygamy residual fixtures") {
  SUBCASE("product state") {
    const auto r = polygamy_residual(product3(), 0, QParam(1.5), RoofConfig{}, RngSeed{1});
    CHECK(std::abs(r.residual) < 1e-9);
    CHECK(r.direction == Direction::Polygamy);
  }
  SUBCASE("GHZ3 at q = 2") {
    const auto r = polygamy_residual(ghz_state(3), 0, QParam(2.0), RoofConfig{}, RngSeed{2});
    CHECK(std::abs(r.lhs - 1.0 / std::sqrt(2.0)) < 1e-12);
    for (double t : r.rhs_terms) CHECK(std::abs(t - 1.0 / std::sqrt(2.0)) < 1e-4);
    CHECK(std::abs(r.residual - 1.0 / std::sqrt(2.0)) < 2e-4);
  }
  SUBCASE("W3 at q = 1.5") {
    const auto r = polygamy_residual(w_state(3), 0, QParam(1.5), RoofConfig{}, RngSeed{3});
    CHECK(r.residual >= -1e-6);
    CHECK(std::abs(r.residual - (r.rhs_sum() - r.lhs)) < 1e-12);
  }
  CHECK_CODE(polygamy_residual(w_state(3), 0, QParam(2.2), RoofConfig{}, RngSeed{1}), ErrorCode::RegimeError);
}

TEST_CASE("tau indicator") {
  SUBCASE("biseparable forms vanish") {
    for (int lone = 0; lone < 3; ++lone)
      for (std::uint64_t s = 0; s < 5; ++s) {
        const auto psi = biseparable(lone, RngSeed{s});
        for (int f = 0; f < 3; ++f) CHECK(std::abs(tau_indicator(psi, f, QParam(1.5))) <= 1e-9);
      }
    for (int f = 0; f < 3; ++f) CHECK(std::abs(tau_indicator(product3(), f, QParam(1.3))) <= 1e-9);
  }
  SUBCASE("genuinely entangled fixtures are positive") {
    CHECK(tau_indicator(w_state(3), 0, QParam(1.5)) > 1e-3);
    CHECK(std::abs(tau_indicator(ghz_state(3), 0, QParam(1.5)) - std::pow(h_one(1.5), 2.0)) < 1e-12);
    for (std::uint64_t s = 0; s < 20; ++s) CHECK(tau_indicator(haar_random_pure(3, RngSeed{s}), 0, QParam(1.5)) > 0.0);
  }
  SUBCASE("W states match the closed form") {
    for (int n = 3; n <= 6; ++n)
      for (double q : {1.05, 1.3, 1.5, 1.7, 1.95}) CHECK(std::abs(tau_indicator(w_state(n), 0, QParam(q)) - tau_w_closed_form(n, QParam(q))) <= 1e-9);
  }
  CHECK_CODE(tau_indicator(w_state(3), 0, QParam(2.0)), ErrorCode::RegimeError);
}

TEST_CASE("W-state closed form") {
  CHECK(std::abs(tau_w_closed_form(3, QParam(2.0))) < 1e-15);
  CHECK(tau_w_closed_form(3, QParam(1.5)) > 0.0);
  CHECK(tau_w_closed_form(9, QParam(1.05)) > 0.0);
  for (int n : {3, 6, 9, 12})
    for (double q : {1.05, 1.5, 1.95}) {
      const double c1 = 2.0 * std::sqrt(n - 1.0) / n;
      const double c2 = 2.0 / n;
      const double expect = std::pow(h_q(c1, QParam(q)), 2.0) - (n - 1) * std::pow(h_q(c2, QParam(q)), 2.0);
      CHECK(std::abs(tau_w_closed_form(n, QParam(q)) - expect) < 1e-14);
    }
  CHECK_CODE(tau_w_closed_form(2, QParam(1.5)), ErrorCode::SizeOutOfRange);
}

TEST_CASE("Monte-Carlo monogamy audit") {
  MonogamyAuditConfig cfg;
  cfg.samples = 100;
  cfg.alphas = {2.0, 3.0};
  const auto out = monogamy_audit(cfg, RngSeed{5});
  CHECK(out.pass);
  CHECK(out.rows.size() == 100u * 10u * 2u * 3u);
  CHECK(out.min_residual >= -1e-9);
  CHECK_FALSE(out.first_violation.has_value());

  cfg.workers = 3;
  const auto par = monogamy_audit(cfg, RngSeed{5});
  REQUIRE(par.rows.size() == out.rows.size());
  for (std::size_t i = 0; i < out.rows.size(); ++i) CHECK(par.rows[i].residual == out.rows[i].residual);
}

TEST_CASE("an impossible tolerance reports the first violating state") {
  MonogamyAuditConfig cfg;
  cfg.samples = 5;
  cfg.tolerance = -1.0;  // demands residual >= 1, which never holds
  const auto out = monogamy_audit(cfg, RngSeed{6});
  CHECK_FALSE(out.pass);
  REQUIRE(out.first_violation.has_value());
  CHECK(*out.first_violation == 0);
  REQUIRE(out.offending_state.has_value());
  const auto expect = haar_random_pure(3, derive_seed(RngSeed{6}, 0));
  CHECK(std::equal(expect.amplitudes().begin(), expect.amplitudes().end(), out.offending_state->amplitudes().begin()));
}

TEST_CASE("Monte-Carlo polygamy audit, small scale") {
  PolygamyAuditConfig cfg;
  cfg.samples = 3;
  cfg.qs = {1.3, 2.0};
  cfg.roof.restarts = 8;
  const auto out = polygamy_audit(cfg, RngSeed{7});
  CHECK(out.pass);
  CHECK(out.rows.size() == 3u * 2u * 3u);
  // Shared pair marginals: rhs for focus 0 and 1 both contain the (0,1) term.
  const auto r = polygamy_residual(haar_random_pure(3, derive_seed(RngSeed{7}, 0)), 0, QParam(1.3), cfg.roof, RngSeed{1});
  CHECK(std::abs(r.rhs_sum() - out.rows[0].rhs_sum) < 1e-4);
}
