#pragma once

// Numerical convex-roof extension of the pure-state G_q-concurrence:
//   minimize / maximize  sum_i p_i C_q(|phi_i>)
// over ensembles {p_i, |phi_i>} of rho. Ensembles are parametrized by m x r
// isometries V acting on the scaled eigenvectors sqrt(e_k)|v_k> of rho, so
// every iterate is an exact decomposition of rho.

#include <vector>

#include "gq/linalg.hpp"
#include "gq/measures.hpp"
#include "gq/rng.hpp"
#include "gq/states.hpp"

namespace gq {

inline constexpr double kRankThreshold = 1e-9;

struct EnsembleDecomposition {
  std::vector<double> probabilities;
  std::vector<PureState> members;
};

/// sum_i p_i |phi_i><phi_i|
ComplexMatrix reconstruct(const EnsembleDecomposition& ensemble);
/// sum_i p_i C_q(|phi_i>) across `cut`.
double ensemble_average(const EnsembleDecomposition& ensemble, const Bipartition& cut, QParam q);

/// Number of eigenvalues of rho above 1e-9.
int numerical_rank(const DensityMatrix& rho);

/// Member i is sum_k V_ik sqrt(e_k)|v_k>, normalized, with p_i its squared
/// norm. Members of zero weight are omitted. Throws NotIsometry unless
/// V^dagger V = I within 1e-8 and V has numerical_rank(rho) columns.
EnsembleDecomposition decomposition_from_isometry(const DensityMatrix& rho, const ComplexMatrix& v);

struct RoofConfig {
  int ensemble_size = 0;  // 0 selects min(r^2, 8), raised to r if needed
  int restarts = 32;
  int max_iters = 500;  // sweeps per restart
  double step_tolerance = 1e-9;
  int workers = 1;  // restarts are distributed over this many threads
};

struct RoofResult {
  double value = 0.0;
  EnsembleDecomposition ensemble;
  int restarts_used = 0;
  bool converged = false;
};

/// Upper bound on the convex roof C_q(rho) across `cut`.
RoofResult roof_minimize(const DensityMatrix& rho, QParam q, const Bipartition& cut, const RoofConfig& cfg, RngSeed seed);
/// Lower bound on the G_q-concurrence of assistance across `cut`.
RoofResult roof_maximize(const DensityMatrix& rho, QParam q, const Bipartition& cut, const RoofConfig& cfg, RngSeed seed);

}  // namespace gq
