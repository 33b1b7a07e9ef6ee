#pragma once

#include <complex>
#include <cstdint>
#include <limits>

namespace phasync {

/// SplitMix64 finalizer. Bijective on 64-bit words; used to derive stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives a child seed from a base seed and up to two indices.
///
/// mix64(s, a, b) = splitmix64(splitmix64(splitmix64(s) ^ a) ^ b). Each index
/// passes through a full avalanche round, so neighbouring trial indices give
/// unrelated streams. Trial seeds depend only on (base, grid, trial), never
/// on which worker thread runs the trial.
constexpr std::uint64_t mix64(std::uint64_t base, std::uint64_t a,
                              std::uint64_t b = 0) noexcept {
  return splitmix64(splitmix64(splitmix64(base) ^ a) ^ b);
}

/// Stream tags so the truth vector, the observation and the eigen-solver
/// start vector drawn from one ModelParams::seed never share a stream.
enum class Stream : std::uint64_t {
  kTruth = 1,
  kObservation = 2,
  kEigenStart = 3,
  kPerturbation = 4,
  kFisherSamples = 5,
};

constexpr std::uint64_t stream_seed(std::uint64_t seed, Stream s) noexcept {
  return mix64(seed, static_cast<std::uint64_t>(s));
}

/// xoshiro256** 1.0 (Blackman & Vigna), state seeded by SplitMix64.
///
/// Satisfies UniformRandomBitGenerator. The library never feeds it to
/// <random> distributions, whose output is implementation-defined; use the
/// helpers below so draws are identical across standard libraries.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

 private:
  std::uint64_t s_[4];
};

/// Uniform double in [0, 1) with 53 random mantissa bits.
double uniform01(Xoshiro256& rng) noexcept;

/// Uniform double in (0, 1]; safe as a log() argument.
double uniform01_open_low(Xoshiro256& rng) noexcept;

/// Standard complex Gaussian CN(0, 1) by Box-Muller: Re and Im are
/// independent N(0, 1/2). Consumes exactly two uniforms per call.
std::complex<double> complex_normal(Xoshiro256& rng) noexcept;

/// Standard real normal N(0, 1); Box-Muller, consumes two uniforms and
/// discards the sine branch.
double standard_normal(Xoshiro256& rng) noexcept;

}  // namespace phasync
