#pragma once

#include <cstdint>
#include <vector>

#include "phasync/hermitian.hpp"
#include "phasync/lower_bound.hpp"
#include "phasync/model.hpp"

namespace phasync::oracle {

/// Largest grid grid_mle will enumerate.
inline constexpr double kMaxGridPoints = 1e10;

struct GridSpec {
  int resolution = 100;  // K: phases on {2 pi k / K}
  bool gauge_fix = true; // pin z_1 = 1
  int threads = 1;

  /// K^(n-1) when gauge-fixed, K^n otherwise.
  double grid_size(std::size_t n) const noexcept;
};

struct GridResult {
  PhaseVector estimate;
  double objective = 0.0;
  std::vector<int> indices;  // grid index of every coordinate
};

/// Exhaustive maximisation of Re(z^H (A o Y) z) over the phase grid. Ties go
/// to the lexicographically smallest index tuple, independent of the thread
/// count. Throws kGuardViolation if K < 8 or the grid exceeds kMaxGridPoints.
GridResult grid_mle(const Observation& obs, const GridSpec& spec);

/// All eigenpairs of a Hermitian matrix by cyclic complex Jacobi rotations,
/// sorted by descending eigenvalue. Sweeps until the off-diagonal Frobenius
/// norm drops below tol. Throws kGuardViolation for n > 512.
std::vector<EigPair> jacobi_eig(const HermitianMatrix& m, double tol = 1e-12);

/// Monte Carlo Fisher information of (a, c) in the two-coordinate reduced
/// model: sample covariance of the score, the score taken by central
/// differences of the exact log-likelihood of the sampled sufficient
/// statistics (direct edge plus the two aggregated stars).
Mat2 mc_fisher(double a, double c, const ModelParams& params, int n_samples, std::uint64_t seed);

}  // namespace phasync::oracle
