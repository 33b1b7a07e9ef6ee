#pragma once

// Reference computations for the unit tests. Each one takes a route that
// shares no code with the library path it checks: plain index loops, dense
// scans, finite differences.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "phasync/hermitian.hpp"
#include "phasync/model.hpp"

namespace phasync::testing {

inline std::vector<cplx> naive_matvec(const HermitianMatrix& m, const std::vector<cplx>& v) {
  std::vector<cplx> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) acc += m(j, k) * v[k];
    out[j] = acc;
  }
  return out;
}

inline HermitianMatrix random_hermitian(std::size_t n, std::uint64_t seed, bool zero_diagonal = false) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  HermitianMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!zero_diagonal) m.set(j, j, cplx{g(gen), 0.0});
    for (std::size_t k = j + 1; k < n; ++k) m.set(j, k, cplx{g(gen), g(gen)});
  }
  return m;
}

inline std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(gen), g(gen)};
  return v;
}

inline PhaseVector random_phases(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<cplx> z(n);
  for (auto& x : z) x = std::polar(1.0, u(gen));
  return PhaseVector(std::move(z));
}

/// min over a global phase by a dense angle scan followed by golden-section
/// refinement; no use of the closed form.
inline double scanned_loss(const PhaseVector& zhat, const PhaseVector& z) {
  const auto cost = [&](double phi) {
    const cplx a = std::polar(1.0, phi);
    double s = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) s += std::norm(zhat[j] * a - z[j]);
    return s;
  };
  constexpr int kScan = 4096;
  double best_phi = 0.0, best = cost(0.0);
  for (int i = 1; i < kScan; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / kScan;
    const double c = cost(phi);
    if (c < best) best = c, best_phi = phi;
  }
  double lo = best_phi - 2.0 * std::numbers::pi / kScan, hi = best_phi + 2.0 * std::numbers::pi / kScan;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    if (cost(x1) < cost(x2)) hi = x2; else lo = x1;
  }
  return std::min(best, cost(0.5 * (lo + hi)));
}

/// ||z z^H - w w^H||_F^2 summed entry by entry.
inline double entrywise_gram(const PhaseVector& z, const PhaseVector& w) {
  double s = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j)
    for (std::size_t k = 0; k < z.size(); ++k)
      s += std::norm(z[j] * std::conj(z[k]) - w[j] * std::conj(w[k]));
  return s;
}

/// sum_{j != k} conj(z_j) (A o Y)_jk z_k by double loop.
inline double loop_objective(const HermitianMatrix& data, const std::vector<cplx>& z) {
  cplx s = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j)
    for (std::size_t k = 0; k < z.size(); ++k)
      if (j != k) s += std::conj(z[j]) * data(j, k) * z[k];
  return s.real();
}

}  // namespace phasync::testing
