#include "phasync/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phasync/error.hpp"
#include "phasync/random.hpp"

namespace phasync {

namespace {

double inf_distance(std::span<const cplx> a, std::span<const cplx> b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

void require_dim(const Observation& obs, std::size_t n, const char* what) {
  if (obs.dim() != n) {
    throw Error(ErrorKind::kDimensionMismatch, std::string(what) + ": observation has dimension " +
                                                   std::to_string(obs.dim()) + ", vector " +
                                                   std::to_string(n));
  }
}

}  // namespace

PhaseVector project_to_circle(std::span<const cplx> w) {
  ComplexVector z(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double m = std::abs(w[j]);
    z[j] = m > kZeroModulusTol ? w[j] / m : cplx{1.0, 0.0};
  }
  return PhaseVector(std::move(z));
}

void GpmConfig::validate() const {
  if (max_iters < 1) throw Error(ErrorKind::kInvalidArgument, "max_iters must be >= 1");
  if (!(fixed_point_tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "fixed_point_tol must be > 0");
  }
}

PhaseVector spectral_init(const Observation& obs, const SpectralOptions& options) {
  return spectral_init_with_diagnostics(obs, options).z0;
}

SpectralInit spectral_init_with_diagnostics(const Observation& obs, const SpectralOptions& options) {
  if (obs.dim() < 2) throw Error(ErrorKind::kInvalidArgument, "spectral_init: n must be >= 2");
  if (obs.data.is_zero()) {
    throw Error(ErrorKind::kDegenerate, "spectral_init: data matrix is zero, no signal");
  }
  const EigPair top = leading_eigenvector(
      obs.data, {.tol = options.eig_tol, .max_iter = options.eig_max_iter, .seed = options.seed});
  return {project_to_circle(top.vector), top.iterations, top.converged};
}

PhaseVector gpm_step(const Observation& obs, const PhaseVector& z) {
  require_dim(obs, z.size(), "gpm_step");
  return project_to_circle(matvec(obs.data, z.entries()));
}

EstimateResult gpm(const Observation& obs, const PhaseVector& z0, const GpmConfig& config,
                   const std::optional<PhaseVector>& truth, const StepFunction& step) {
  config.validate();
  require_dim(obs, z0.size(), "gpm");
  if (truth) require_dim(obs, truth->size(), "gpm truth");

  EstimateResult result;
  const bool track = config.track_trajectory && truth.has_value();
  PhaseVector z = z0;
  PhaseVector fz = step(obs, z);
  if (track) result.trajectory.push_back(loss(z, *truth));

  for (int t = 1; t <= config.max_iters; ++t) {
    const double change = inf_distance(fz.entries(), z.entries());
    z = std::move(fz);
    fz = step(obs, z);
    result.iterations = t;
    result.residual = inf_distance(fz.entries(), z.entries());
    if (track) result.trajectory.push_back(loss(z, *truth));
    if (change <= config.fixed_point_tol && result.residual <= config.fixed_point_tol) {
      result.converged = true;
      break;
    }
  }
  result.estimate = std::move(z);
  return result;
}

EstimateResult mle(const Observation& obs, const GpmConfig& config,
                   const std::optional<PhaseVector>& truth, const SpectralOptions& spectral) {
  const PhaseVector z0 = spectral_init(obs, spectral);
  return gpm(obs, z0, config, truth);
}

double mle_objective(const Observation& obs, std::span<const cplx> z) {
  require_dim(obs, z.size(), "mle_objective");
  const cplx q = inner(z, matvec(obs.data, z));
  const double n = static_cast<double>(z.size());
  // Re-check of the Hermitian-form identity; a violation means the data
  // matrix lost its symmetry somewhere upstream.
  if (std::abs(q.imag()) >= 1e-9 * n * std::max(1.0, std::abs(q.real()) / (n * n))) {
    throw Error(ErrorKind::kNotHermitian, "mle_objective: quadratic form has imaginary part " +
                                              std::to_string(q.imag()));
  }
  return q.real();
}

std::vector<ContractionSample> contraction_probe(const Observation& obs, const PhaseVector& truth,
                                                 double gamma, int trials, std::uint64_t seed) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "contraction_probe: gamma must lie in (0, 1)");
  }
  if (trials < 1) throw Error(ErrorKind::kInvalidArgument, "contraction_probe: trials must be >= 1");
  require_dim(obs, truth.size(), "contraction_probe");

  const std::size_t n = truth.size();
  const double target = gamma * static_cast<double>(n);
  std::vector<ContractionSample> samples;
  samples.reserve(static_cast<std::size_t>(trials));

  for (int trial = 0; trial < trials; ++trial) {
    Xoshiro256 rng(mix64(stream_seed(seed, Stream::kPerturbation), static_cast<std::uint64_t>(trial)));
    std::vector<double> direction(n);
    for (double& g : direction) g = standard_normal(rng);

    // Small-angle start: E|e^{i s g} - 1|^2 = 2(1 - e^{-s^2/2}).
    double scale = std::sqrt(-2.0 * std::log1p(-0.5 * std::min(gamma, 1.0 - 1e-9)));
    bool hit = false;
    PhaseVector z;
    double before = 0.0;
    for (int attempt = 0; attempt < 100; ++attempt) {
      ComplexVector entries(n);
      for (std::size_t j = 0; j < n; ++j) entries[j] = truth[j] * std::polar(1.0, scale * direction[j]);
      z = PhaseVector(std::move(entries));
      before = loss(z, truth);
      if (before >= 0.9 * target && before <= 1.1 * target) {
        hit = true;
        break;
      }
      scale *= before > 0.0 ? std::sqrt(target / before) : 2.0;
    }
    if (!hit) {
      throw Error(ErrorKind::kDidNotConverge,
                  "contraction_probe: could not reach the target corruption level after 100 "
                  "rescalings");
    }
    samples.push_back({before, loss(gpm_step(obs, z), truth)});
  }
  return samples;
}

}  // namespace phasync
