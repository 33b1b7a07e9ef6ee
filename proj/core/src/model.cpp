#include "phasync/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "phasync/error.hpp"
#include "phasync/random.hpp"

namespace phasync {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": lengths " + std::to_string(a) + " and " + std::to_string(b));
  }
}

}  // namespace

PhaseVector::PhaseVector(ComplexVector entries) : entries_(std::move(entries)) {
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (std::abs(std::abs(entries_[j]) - 1.0) > kUnitModulusTol) {
      throw Error(ErrorKind::kNotUnitModulus,
                  "entry " + std::to_string(j) + " has modulus " +
                      std::to_string(std::abs(entries_[j])));
    }
  }
}

PhaseVector PhaseVector::ones(std::size_t n) { return PhaseVector(ComplexVector(n, cplx{1.0, 0.0})); }

PhaseVector PhaseVector::from_angles(std::span<const double> angles) {
  ComplexVector z(angles.size());
  for (std::size_t j = 0; j < angles.size(); ++j) z[j] = std::polar(1.0, angles[j]);
  return PhaseVector(std::move(z));
}

PhaseVector PhaseVector::rotated(cplx a) const {
  ComplexVector z(entries_.size());
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = a * entries_[j];
  return PhaseVector(std::move(z));
}

void ModelParams::validate() const {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "n must be at least 2");
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::kInvalidArgument, "p must lie in (0, 1]");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::kInvalidArgument, "sigma must be finite and non-negative");
  }
}

void Observation::validate() const {
  require_same_size(mask.dim(), data.dim(), "Observation");
  if (!mask.has_zero_diagonal() || !data.has_zero_diagonal()) {
    throw Error(ErrorKind::kInvalidArgument, "Observation: diagonal must be zero");
  }
  const std::size_t n = mask.dim();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const cplx a = mask(j, k);
      if (a != cplx{0.0, 0.0} && a != cplx{1.0, 0.0}) {
        throw Error(ErrorKind::kInvalidArgument, "Observation: mask entries must be 0 or 1");
      }
      if (a.real() == 0.0 && data(j, k) != cplx{}) {
        throw Error(ErrorKind::kInvalidArgument, "Observation: data nonzero on an unobserved pair");
      }
    }
  }
}

PhaseVector sample_truth(const ModelParams& params, TruthMode mode, std::span<const cplx> given) {
  params.validate();
  if (mode == TruthMode::kFixedGiven) {
    require_same_size(given.size(), params.n, "sample_truth");
    return PhaseVector(ComplexVector(given.begin(), given.end()));
  }
  Xoshiro256 rng(stream_seed(params.seed, Stream::kTruth));
  ComplexVector z(params.n);
  for (cplx& x : z) x = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
  return PhaseVector(std::move(z));
}

Observation sample_observation(const PhaseVector& truth, const ModelParams& params) {
  params.validate();
  require_same_size(truth.size(), params.n, "sample_observation");
  const std::size_t n = params.n;
  Xoshiro256 rng(stream_seed(params.seed, Stream::kObservation));
  Observation obs{HermitianMatrix(n), HermitianMatrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      // One uniform per pair for the mask, two more for observed pairs.
      if (!(uniform01(rng) < params.p)) continue;
      const cplx noise = complex_normal(rng);
      obs.mask.set(j, k, cplx{1.0, 0.0});
      obs.data.set(j, k, truth[j] * std::conj(truth[k]) + params.sigma * noise);
    }
  }
  return obs;
}

cplx phase_overlap(std::span<const cplx> zhat, std::span<const cplx> ztruth) {
  require_same_size(zhat.size(), ztruth.size(), "phase_overlap");
  cplx s{0.0, 0.0};
  for (std::size_t j = 0; j < zhat.size(); ++j) s += zhat[j] * std::conj(ztruth[j]);
  return s;
}

double loss(const PhaseVector& zhat, const PhaseVector& ztruth) {
  const cplx s = phase_overlap(zhat, ztruth);
  const double abs_s = std::abs(s);
  if (abs_s == 0.0) return 2.0 * static_cast<double>(zhat.size());
  const cplx a = std::conj(s) / abs_s;
  double sum = 0.0;
  for (std::size_t j = 0; j < zhat.size(); ++j) sum += std::norm(zhat[j] * a - ztruth[j]);
  return sum;
}

PhaseVector align(const PhaseVector& zhat, const PhaseVector& ztruth) {
  const cplx s = phase_overlap(zhat, ztruth);
  const double abs_s = std::abs(s);
  if (abs_s == 0.0) {
    throw Error(ErrorKind::kDegenerate, "alignment undefined: orthogonal estimate");
  }
  return zhat.rotated(std::conj(s) / abs_s);
}

double gram_distance(const PhaseVector& z, const PhaseVector& w) {
  // 2(n^2 - |s|^2) = 2(n - |s|)(n + |s|) = loss * (n + |s|).
  const double abs_s = std::abs(phase_overlap(z, w));
  return loss(z, w) * (static_cast<double>(z.size()) + abs_s);
}

}  // namespace phasync
