#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "phasync/hermitian.hpp"
#include "phasync/model.hpp"

namespace phasync {

/// Entries below this modulus are treated as exact zeros when projecting
/// onto the unit circle; the coordinate is then set to 1.
inline constexpr double kZeroModulusTol = 1e-14;

/// Entrywise projection onto C_1: w_j / |w_j|, or 1 when |w_j| <= kZeroModulusTol.
PhaseVector project_to_circle(std::span<const cplx> w);

struct GpmConfig {
  int max_iters = 200;
  double fixed_point_tol = 1e-12;  // on ||f(z) - z||_inf
  bool track_trajectory = false;

  void validate() const;
};

struct EstimateResult {
  PhaseVector estimate;
  int iterations = 0;
  double residual = 0.0;  // ||f(estimate) - estimate||_inf
  bool converged = false;
  /// Loss against the supplied truth, index t = loss of z^(t); t = 0 is the
  /// starting point. Empty unless tracking was requested and truth given.
  std::vector<double> trajectory;
};

struct SpectralOptions {
  double eig_tol = 1e-14;
  int eig_max_iter = 10000;
  std::uint64_t seed = 0;
};

/// z0_j = u_j / |u_j| for the leading eigenvector u of obs.data (1 where
/// u_j vanishes). Throws kDegenerate when the data matrix is zero.
PhaseVector spectral_init(const Observation& obs, const SpectralOptions& options = {});

struct SpectralInit {
  PhaseVector z0;
  int eig_iterations = 0;
  bool eig_converged = false;
};

/// spectral_init plus the eigen-solver's iteration count and convergence flag.
SpectralInit spectral_init_with_diagnostics(const Observation& obs,
                                            const SpectralOptions& options = {});

/// One generalized power step f(z) = project_to_circle((A o Y) z).
PhaseVector gpm_step(const Observation& obs, const PhaseVector& z);

/// Map used by gpm(); the default is gpm_step. Exposed so harnesses can
/// drive the iteration with a deliberately broken step.
using StepFunction = std::function<PhaseVector(const Observation&, const PhaseVector&)>;

/// Iterates z <- f(z) from z0 until ||z_new - z_old||_inf and the residual
/// ||f(z) - z||_inf are both within config.fixed_point_tol, or max_iters
/// steps have run. Non-convergence is reported through the result.
EstimateResult gpm(const Observation& obs, const PhaseVector& z0, const GpmConfig& config,
                   const std::optional<PhaseVector>& truth = std::nullopt,
                   const StepFunction& step = gpm_step);

/// MLE candidate: spectral_init followed by gpm with a strict fixed-point
/// tolerance. The residual certifies a fixed point of f; global optimality of
/// z^H (A o Y) z is only guaranteed in the high-SNR regime, elsewhere the
/// result is a stationary point.
EstimateResult mle(const Observation& obs, const GpmConfig& config = {},
                   const std::optional<PhaseVector>& truth = std::nullopt,
                   const SpectralOptions& spectral = {});

/// Re(z^H (A o Y) z).
double mle_objective(const Observation& obs, std::span<const cplx> z);

struct ContractionSample {
  double loss_before = 0.0;
  double loss_after = 0.0;
};

/// Empirical check of one-step contraction. Each trial perturbs the truth's
/// phases by scaled Gaussian angles until loss(z, truth) lies in
/// [0.9, 1.1] * gamma * n, applies gpm_step once and records both losses.
/// Throws kDidNotConverge if 100 rescalings cannot hit the band.
std::vector<ContractionSample> contraction_probe(const Observation& obs, const PhaseVector& truth,
                                                 double gamma, int trials, std::uint64_t seed);

}  // namespace phasync
