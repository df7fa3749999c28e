#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace gq {

struct RngSeed {
  std::uint64_t value = 0;
};

/// splitmix64 finalizer; used to derive independent per-task seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr RngSeed derive_seed(RngSeed master, std::uint64_t index) noexcept {
  return {mix_seed(master.value ^ mix_seed(index + 1))};
}

/// std::mt19937_64 (bit-exact across standard libraries) with Box-Muller
/// Gaussians, so sampled states are reproducible everywhere.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Pair of independent N(0,1) samples packed as (re, im).
  std::complex<double> complex_gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  double gaussian() { return complex_gaussian().real(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gq
