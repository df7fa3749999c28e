#include "gq/convex_roof.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "gq/error.hpp"
#include "gq/kernels.hpp"

namespace gq {

namespace {

constexpr double kIsometryTol = 1e-8;
constexpr double kMinStep = 1e-10;
constexpr double kMaxStep = std::numbers::pi / 4.0;
constexpr int kQuietSweepsToStop = 2;

// p * C_q(v/|v|) for an unnormalized vector v, across a fixed cut.
class CutEvaluator {
 public:
  CutEvaluator(const Bipartition& cut, QParam q) : q_(q) {
    const QubitSet a = cut.side_a();
    const QubitSet smaller = a.size() <= a.n_qubits() - a.size() ? a : a.complement();
    table_ = bipartite_index_table(smaller);
    dk_ = std::size_t{1} << smaller.size();
    dt_ = table_.size() / dk_;
  }

  std::size_t dim() const noexcept { return table_.size(); }

  double operator()(std::span<const cplx> v) const {
    const double p = kernels::norm2(v);
    if (!(p > 0.0)) return 0.0;
    if (dk_ == 2) {
      double a = 0.0;
      double d = 0.0;
      cplx b = 0.0;
      for (std::size_t j = 0; j < dt_; ++j) {
        const cplx x = v[table_[j]];
        const cplx y = v[table_[dt_ + j]];
        a += std::norm(x);
        d += std::norm(y);
        b += x * std::conj(y);
      }
      const double det = std::max(a * d - std::norm(b), 0.0) / (p * p);
      const double big = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * det)));
      const double spectrum[2] = {big, det / big};
      return p * gq_of_spectrum(spectrum, q_);
    }
    ComplexMatrix reduced(dk_, dk_);
    for (std::size_t i = 0; i < dk_; ++i)
      for (std::size_t i2 = 0; i2 < dk_; ++i2) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < dt_; ++j) s += v[table_[i * dt_ + j]] * std::conj(v[table_[i2 * dt_ + j]]);
        reduced(i, i2) = s / p;
      }
    auto ev = hermitian_eigenvalues(reduced);
    for (double& l : ev) l = std::max(l, 0.0);
    return p * gq_of_spectrum(ev, q_);
  }

 private:
  QParam q_;
  std::vector<std::size_t> table_;
  std::size_t dk_ = 0;
  std::size_t dt_ = 0;
};

struct Spectrum {
  std::vector<double> values;  // kept eigenvalues, descending
  ComplexMatrix scaled;        // rows sqrt(e_k) v_k^T
};

Spectrum kept_spectrum(const DensityMatrix& rho) {
  const HermitianEig eig = hermitian_eig(rho.matrix());
  Spectrum s;
  for (double e : eig.values)
    if (e > kRankThreshold) s.values.push_back(e);
  const std::size_t d = rho.dim();
  s.scaled = ComplexMatrix(s.values.size(), d);
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    const double w = std::sqrt(s.values[k]);
    for (std::size_t i = 0; i < d; ++i) s.scaled(k, i) = w * eig.vectors(i, k);
  }
  return s;
}

struct RestartOutcome {
  double objective = 0.0;  // signed: lower is better
  ComplexMatrix v;
  bool converged = false;
};

ComplexMatrix random_isometry(std::size_t m, std::size_t r, RngSeed seed) {
  Rng rng(seed);
  ComplexMatrix v(m, r);
  for (cplx& z : v.entries()) z = rng.complex_gaussian();
  orthonormalize_columns(v);
  return v;
}

ComplexMatrix canonical_isometry(std::size_t m, std::size_t r) {
  ComplexMatrix v(m, r);
  for (std::size_t k = 0; k < r; ++k) v(k, k) = 1.0;
  return v;
}

// Derivative-free descent on the isometry manifold: for every pair of
// ensemble rows, line-search the two off-diagonal U(2) generators.
RestartOutcome descend(const CutEvaluator& eval, const ComplexMatrix& basis, ComplexMatrix v, double sign,
                       const RoofConfig& cfg) {
  const std::size_t m = v.rows();
  const std::size_t d = basis.cols();
  ComplexMatrix psi = v * basis;
  std::vector<double> term(m);
  for (std::size_t i = 0; i < m; ++i) term[i] = sign * eval(psi.row(i));

  const std::size_t n_moves = m * (m - 1);  // pairs x 2 generators
  std::vector<double> step(n_moves, 0.3);
  std::vector<cplx> x(d), y(d);

  auto coefficients = [](int gen, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    if (gen == 0) return std::array<cplx, 4>{c, -s, s, c};
    return std::array<cplx, 4>{c, cplx(0.0, s), cplx(0.0, s), c};
  };

  RestartOutcome out;
  int quiet = 0;
  for (int sweep = 0; sweep < cfg.max_iters; ++sweep) {
    double improvement = 0.0;
    std::size_t move = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        for (int gen = 0; gen < 2; ++gen, ++move) {
          const double base = term[i] + term[j];
          auto trial = [&](double theta) {
            std::copy(psi.row(i).begin(), psi.row(i).end(), x.begin());
            std::copy(psi.row(j).begin(), psi.row(j).end(), y.begin());
            const auto k = coefficients(gen, theta);
            kernels::rotate_pair(x, y, k[0], k[1], k[2], k[3]);
            return sign * (eval(x) + eval(y)) - base;
          };
          const double h = step[move];
          const double fp = trial(h);
          const double fm = trial(-h);
          double best_theta = 0.0;
          double best = 0.0;
          if (fp < best) best = fp, best_theta = h;
          if (fm < best) best = fm, best_theta = -h;
          const double curvature = (fp + fm) / (h * h);
          if (curvature > 0.0) {
            const double slope = (fp - fm) / (2.0 * h);
            const double theta = std::clamp(-slope / curvature, -4.0 * h, 4.0 * h);
            if (theta != 0.0 && std::abs(theta - h) > 1e-3 * h && std::abs(theta + h) > 1e-3 * h) {
              const double ft = trial(theta);
              if (ft < best) best = ft, best_theta = theta;
            }
          }
          if (best < 0.0) {
            const auto k = coefficients(gen, best_theta);
            kernels::rotate_pair(psi.row(i), psi.row(j), k[0], k[1], k[2], k[3]);
            kernels::rotate_pair(v.row(i), v.row(j), k[0], k[1], k[2], k[3]);
            term[i] = sign * eval(psi.row(i));
            term[j] = sign * eval(psi.row(j));
            improvement += base - (term[i] + term[j]);
            step[move] = std::clamp(1.5 * std::abs(best_theta), kMinStep, kMaxStep);
          } else {
            step[move] = std::max(kMinStep, 0.3 * h);
          }
        }
      }
    }
    quiet = improvement < cfg.step_tolerance ? quiet + 1 : 0;
    if (quiet >= kQuietSweepsToStop) {
      out.converged = true;
      break;
    }
  }
  out.objective = 0.0;
  for (double t : term) out.objective += t;
  out.v = std::move(v);
  return out;
}

RoofResult optimize_roof(const DensityMatrix& rho, QParam q, const Bipartition& cut, const RoofConfig& cfg, RngSeed seed,
                         double sign) {
  if (cut.n_qubits() != rho.n_qubits()) fail(ErrorCode::BadCut, "cut is for a different register size");
  if (cfg.restarts < 1) fail(ErrorCode::BadParameter, "restarts must be >= 1");
  if (cfg.max_iters < 0) fail(ErrorCode::BadParameter, "max_iters must be >= 0");
  const Spectrum spec = kept_spectrum(rho);
  const std::size_t r = spec.values.size();
  std::size_t m = cfg.ensemble_size > 0 ? static_cast<std::size_t>(cfg.ensemble_size) : std::max(r, std::min<std::size_t>(r * r, 8));
  if (m < r) fail(ErrorCode::BadParameter, "ensemble size must be at least rank(rho)");

  const CutEvaluator eval(cut, q);
  const int restarts = cfg.restarts;
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  auto run = [&](int k) {
    ComplexMatrix start = k == 0 ? canonical_isometry(m, r) : random_isometry(m, r, derive_seed(seed, static_cast<std::uint64_t>(k)));
    outcomes[static_cast<std::size_t>(k)] = descend(eval, spec.scaled, std::move(start), sign, cfg);
  };

  const int workers = std::clamp(cfg.workers, 1, restarts);
  if (workers == 1) {
    for (int k = 0; k < restarts; ++k) run(k);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int k = w; k < restarts; k += workers) run(k);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Reduce by value; ties go to the lowest restart index.
  std::size_t best = 0;
  for (std::size_t k = 1; k < outcomes.size(); ++k)
    if (outcomes[k].objective < outcomes[best].objective) best = k;

  RoofResult result;
  result.ensemble = decomposition_from_isometry(rho, outcomes[best].v);
  result.value = ensemble_average(result.ensemble, cut, q);
  result.restarts_used = restarts;
  result.converged = outcomes[best].converged;
  return result;
}

}  // namespace

ComplexMatrix reconstruct(const EnsembleDecomposition& ensemble) {
  if (ensemble.members.empty()) fail(ErrorCode::BadParameter, "empty ensemble");
  const std::size_t d = ensemble.members.front().dim();
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
    const PureState& s = ensemble.members[i];
    if (s.dim() != d) fail(ErrorCode::BadDimension, "ensemble members live on different registers");
    out += ensemble.probabilities[i] * ComplexMatrix::outer(s.amplitudes());
  }
  return out;
}

double ensemble_average(const EnsembleDecomposition& ensemble, const Bipartition& cut, QParam q) {
  double total = 0.0;
  for (std::size_t i = 0; i < ensemble.members.size(); ++i)
    total += ensemble.probabilities[i] * gq_pure(ensemble.members[i], cut, q).value;
  return total;
}

int numerical_rank(const DensityMatrix& rho) {
  const auto ev = hermitian_eigenvalues(rho.matrix());
  return static_cast<int>(std::count_if(ev.begin(), ev.end(), [](double e) { return e > kRankThreshold; }));
}

EnsembleDecomposition decomposition_from_isometry(const DensityMatrix& rho, const ComplexMatrix& v) {
  const Spectrum spec = kept_spectrum(rho);
  const std::size_t r = spec.values.size();
  if (v.cols() != r)
    fail(ErrorCode::NotIsometry, "isometry needs " + std::to_string(r) + " columns (the numerical rank)");
  if (v.rows() < r) fail(ErrorCode::NotIsometry, "isometry needs at least as many rows as columns");
  const ComplexMatrix gram = v.adjoint() * v;
  if (max_abs_diff(gram, ComplexMatrix::identity(r)) > kIsometryTol) fail(ErrorCode::NotIsometry, "V^dagger V != I");

  const ComplexMatrix psi = v * spec.scaled;
  EnsembleDecomposition out;
  double total = 0.0;
  for (std::size_t i = 0; i < psi.rows(); ++i) {
    const double p = kernels::norm2(psi.row(i));
    if (!(p > 1e-300)) continue;
    std::vector<cplx> amps(psi.row(i).begin(), psi.row(i).end());
    out.members.push_back(PureState::normalized(rho.n_qubits(), std::move(amps)));
    out.probabilities.push_back(p);
    total += p;
  }
  for (double& p : out.probabilities) p /= total;
  return out;
}

RoofResult roof_minimize(const DensityMatrix& rho, QParam q, const Bipartition& cut, const RoofConfig& cfg, RngSeed seed) {
  return optimize_roof(rho, q, cut, cfg, seed, 1.0);
}

RoofResult roof_maximize(const DensityMatrix& rho, QParam q, const Bipartition& cut, const RoofConfig& cfg, RngSeed seed) {
  return optimize_roof(rho, q, cut, cfg, seed, -1.0);
}

}  // namespace gq
