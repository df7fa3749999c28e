#include <doctest.h>

#include <cmath>
#include <vector>

#include "gq/convex_roof.hpp"
#include "gq/kernels.hpp"
#include "gq/linalg.hpp"
#include "support.hpp"

using namespace gq;
using kernels::Backend;

namespace {

std::vector<cplx> random_vec(std::size_t n, Rng& rng) {
  std::vector<cplx> v(n);
  for (auto& z : v) z = rng.complex_gaussian();
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Restores the startup selection when a test switches backends.
struct BackendGuard {
  Backend saved = kernels::active_backend();
  ~BackendGuard() { kernels::select_backend(saved); }
};

}  // namespace

TEST_CASE("scalar backend is always available and selectable") {
  BackendGuard guard;
  CHECK(kernels::backend_available(Backend::Scalar));
  CHECK(kernels::select_backend(Backend::Scalar));
  CHECK(kernels::active_backend() == Backend::Scalar);
  CHECK(kernels::backend_name(Backend::Scalar) == "scalar");
}

TEST_CASE("scalar kernels match their definitions") {
  Rng rng(RngSeed{1});
  const auto& k = kernels::scalar_table();
  for (std::size_t n : {0u, 1u, 5u, 16u}) {
    auto x = random_vec(n, rng);
    auto y = random_vec(n, rng);
    cplx dot = 0.0;
    double nn = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += x[i] * std::conj(y[i]), nn += std::norm(x[i]);
    CHECK(std::abs(k.dot_conj(x.data(), y.data(), n) - dot) < 1e-12);
    CHECK(std::abs(k.norm2(x.data(), n) - nn) < 1e-12);

    const cplx a(0.3, -0.2), b(1.1, 0.4), c(-0.5, 0.9), d(0.7, 0.0);
    auto x2 = x, y2 = y;
    k.rotate_pair(x2.data(), y2.data(), n, a, b, c, d);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(x2[i] - (a * x[i] + b * y[i])) < 1e-12);
      CHECK(std::abs(y2[i] - (c * x[i] + d * y[i])) < 1e-12);
    }
    auto y3 = y;
    k.axpy(a, x.data(), y3.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y3[i] - (y[i] + a * x[i])) < 1e-12);
    auto x4 = x;
    k.scale(2.5, x4.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x4[i] - 2.5 * x[i]) < 1e-15);
  }
}

#if defined(GQ_HAVE_AVX2)

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!kernels::backend_available(Backend::Avx2)) {
    MESSAGE("CPU lacks AVX2/FMA; skipping");
    return;
  }
  const auto& s = kernels::scalar_table();
  const auto& v = kernels::avx2_table();
  Rng rng(RngSeed{2});
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto x = random_vec(n, rng);
    const auto y = random_vec(n, rng);
    const double scale = 1.0 + static_cast<double>(n);

    CHECK(std::abs(s.dot_conj(x.data(), y.data(), n) - v.dot_conj(x.data(), y.data(), n)) <= 1e-13 * scale);
    CHECK(std::abs(s.norm2(x.data(), n) - v.norm2(x.data(), n)) <= 1e-13 * scale);

    const cplx a(0.3, -0.2), b(1.1, 0.4), c(-0.5, 0.9), d(0.7, 0.1);
    auto xs = x, ys = y, xv = x, yv = y;
    s.rotate_pair(xs.data(), ys.data(), n, a, b, c, d);
    v.rotate_pair(xv.data(), yv.data(), n, a, b, c, d);
    CHECK(max_diff(xs, xv) <= 1e-14);
    CHECK(max_diff(ys, yv) <= 1e-14);

    auto ya = y, yb = y;
    s.axpy(b, x.data(), ya.data(), n);
    v.axpy(b, x.data(), yb.data(), n);
    CHECK(max_diff(ya, yb) <= 1e-14);

    auto sa = x, sb = x;
    s.scale(-1.75, sa.data(), n);
    v.scale(-1.75, sb.data(), n);
    CHECK(max_diff(sa, sb) == 0.0);
  }
}

TEST_CASE("AVX2 kernels leave data beyond the requested length untouched") {
  if (!kernels::backend_available(Backend::Avx2)) return;
  const auto& v = kernels::avx2_table();
  Rng rng(RngSeed{3});
  auto x = random_vec(8, rng);
  auto y = random_vec(8, rng);
  const auto x0 = x, y0 = y;
  v.rotate_pair(x.data(), y.data(), 5, 0.0, 1.0, 1.0, 0.0);
  for (std::size_t i = 5; i < 8; ++i) {
    CHECK(x[i] == x0[i]);
    CHECK(y[i] == y0[i]);
  }
}

TEST_CASE("higher-level results agree across backends") {
  if (!kernels::backend_available(Backend::Avx2)) return;
  BackendGuard guard;
  Rng rng(RngSeed{4});
  const auto a = test::random_hermitian(16, rng);

  REQUIRE(kernels::select_backend(Backend::Scalar));
  const auto es = hermitian_eig(a);
  const auto rho = random_mixed(2, 3, RngSeed{5});
  const auto rs = roof_minimize(rho, QParam(1.5), Bipartition::single(2, 0), RoofConfig{}, RngSeed{6});

  REQUIRE(kernels::select_backend(Backend::Avx2));
  const auto ev = hermitian_eig(a);
  const auto rv = roof_minimize(rho, QParam(1.5), Bipartition::single(2, 0), RoofConfig{}, RngSeed{6});

  for (std::size_t i = 0; i < es.values.size(); ++i) CHECK(std::abs(es.values[i] - ev.values[i]) < 1e-12);
  CHECK(std::abs(rs.value - rv.value) < 1e-8);
}

#endif
