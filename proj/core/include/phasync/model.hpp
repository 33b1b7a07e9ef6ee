#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "phasync/hermitian.hpp"

namespace phasync {

inline constexpr double kUnitModulusTol = 1e-12;

/// A vector in C_1^n: every entry has modulus one (within kUnitModulusTol).
class PhaseVector {
 public:
  PhaseVector() = default;

  /// Validates |entries[j]| = 1. Throws kNotUnitModulus otherwise.
  explicit PhaseVector(ComplexVector entries);

  /// The all-ones vector of length n.
  static PhaseVector ones(std::size_t n);

  /// exp(i * angles[j]).
  static PhaseVector from_angles(std::span<const double> angles);

  std::size_t size() const noexcept { return entries_.size(); }
  const cplx& operator[](std::size_t j) const noexcept { return entries_[j]; }
  std::span<const cplx> entries() const noexcept { return entries_; }
  operator std::span<const cplx>() const noexcept { return entries_; }

  /// a * z for a unit-modulus a.
  PhaseVector rotated(cplx a) const;

  friend bool operator==(const PhaseVector&, const PhaseVector&) = default;

 private:
  ComplexVector entries_;
};

struct ModelParams {
  std::size_t n = 2;
  double p = 1.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;

  /// Throws kInvalidArgument unless n >= 2, 0 < p <= 1, sigma >= 0.
  void validate() const;

  /// sigma^2 / (2p), the asymptotic minimax risk.
  double theory_risk() const noexcept { return sigma * sigma / (2.0 * p); }
};

/// Hermitian 0/1 mask A and masked data A o Y, both with zero diagonal.
struct Observation {
  HermitianMatrix mask;
  HermitianMatrix data;

  std::size_t dim() const noexcept { return data.dim(); }

  /// Throws unless both matrices share a dimension, have zero diagonal, the
  /// mask is 0/1 and data vanishes wherever the mask does.
  void validate() const;
};

enum class TruthMode { kUniformRandom, kFixedGiven };

/// Uniform-random mode draws theta_j ~ U[0, 2pi) from the truth stream of
/// params.seed; fixed mode returns a validated copy of `given`.
PhaseVector sample_truth(const ModelParams& params, TruthMode mode = TruthMode::kUniformRandom,
                         std::span<const cplx> given = {});

/// For each j < k: A_jk ~ Bernoulli(p) and, when observed,
/// data_jk = z_j conj(z_k) + sigma W_jk with W_jk ~ CN(0, 1). Pairs are visited
/// in row-major upper-triangle order from the observation stream of
/// params.seed, so identical params give bit-identical observations.
Observation sample_observation(const PhaseVector& truth, const ModelParams& params);

/// s = sum_j zhat_j conj(ztruth_j).
cplx phase_overlap(std::span<const cplx> zhat, std::span<const cplx> ztruth);

/// Quotient loss min_{|a|=1} sum_j |zhat_j a - ztruth_j|^2 = 2(n - |s|).
///
/// Evaluated as the squared residual at the closed-form minimiser
/// a* = conj(s)/|s|; algebraically identical for unit vectors, and free of
/// the cancellation in n - |s| when the loss is far below machine epsilon
/// times n. Returns 2n when s = 0.
double loss(const PhaseVector& zhat, const PhaseVector& ztruth);

/// zhat * conj(s)/|s|. Throws kDegenerate when s = 0.
PhaseVector align(const PhaseVector& zhat, const PhaseVector& ztruth);

/// ||z z^H - w w^H||_F^2 = 2(n^2 - |z^H w|^2).
double gram_distance(const PhaseVector& z, const PhaseVector& w);

}  // namespace phasync
