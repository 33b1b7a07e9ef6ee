#include "phasync/oracle.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "phasync/error.hpp"
#include "phasync/random.hpp"

namespace phasync::oracle {

double GridSpec::grid_size(std::size_t n) const noexcept {
  const double free = static_cast<double>(gauge_fix ? n - 1 : n);
  return std::pow(static_cast<double>(resolution), free);
}

namespace {

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t flat = 0;
};

// Scans outer indices [begin, end) of the odometer over all free coordinates
// but the last; the last free coordinate is swept by the inner loop.
Best scan_range(const HermitianMatrix& m, int k, std::size_t first_free, std::uint64_t begin,
                std::uint64_t end, const std::vector<double>& cos_table,
                const std::vector<double>& sin_table, const std::vector<cplx>& phases) {
  const std::size_t n = m.dim();
  const std::size_t last = n - 1;
  const std::size_t outer_coords = last - first_free;  // free coordinates before the last
  std::vector<cplx> z(n, cplx{1.0, 0.0});
  std::vector<int> digits(outer_coords, 0);
  Best best;
  std::vector<double> vals(static_cast<std::size_t>(k));

  for (std::uint64_t outer = begin; outer < end; ++outer) {
    std::uint64_t rest = outer;
    for (std::size_t d = outer_coords; d-- > 0;) {
      digits[d] = static_cast<int>(rest % static_cast<std::uint64_t>(k));
      rest /= static_cast<std::uint64_t>(k);
      z[first_free + d] = phases[static_cast<std::size_t>(digits[d])];
    }
    // Objective restricted to coordinates 0..last-1, plus the diagonal of `last`.
    double base = m(last, last).real();
    for (std::size_t j = 0; j < last; ++j) {
      base += m(j, j).real();
      for (std::size_t l = j + 1; l < last; ++l) base += 2.0 * (std::conj(z[j]) * m(j, l) * z[l]).real();
    }
    cplx b{0.0, 0.0};
    for (std::size_t j = 0; j < last; ++j) b += std::conj(z[j]) * m(j, last);
    const double br = 2.0 * b.real();
    const double bi = 2.0 * b.imag();

    // First pass: values and their maximum. Second pass only when it can win.
    double top = -std::numeric_limits<double>::infinity();
    for (int q = 0; q < k; ++q) {
      const double v = base + (br * cos_table[q] - bi * sin_table[q]);
      vals[q] = v;
      top = v > top ? v : top;
    }
    if (top > best.value) {
      for (int q = 0; q < k; ++q) {
        if (vals[q] == top) {
          best.value = top;
          best.flat = outer * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(q);
          break;
        }
      }
    }
  }
  return best;
}

}  // namespace

GridResult grid_mle(const Observation& obs, const GridSpec& spec) {
  const std::size_t n = obs.dim();
  const int k = spec.resolution;
  if (k < 8) throw Error(ErrorKind::kGuardViolation, "grid_mle: resolution must be >= 8");
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "grid_mle: n must be >= 2");
  const double size = spec.grid_size(n);
  if (size > kMaxGridPoints) {
    throw Error(ErrorKind::kGuardViolation,
                "grid_mle: grid of " + std::to_string(size) + " points exceeds the limit of " +
                    std::to_string(kMaxGridPoints));
  }

  std::vector<double> cos_table(static_cast<std::size_t>(k)), sin_table(static_cast<std::size_t>(k));
  std::vector<cplx> phases(static_cast<std::size_t>(k));
  for (int q = 0; q < k; ++q) {
    const double theta = 2.0 * std::numbers::pi * q / k;
    cos_table[q] = std::cos(theta);
    sin_table[q] = std::sin(theta);
    phases[q] = {cos_table[q], sin_table[q]};
  }

  const std::size_t first_free = spec.gauge_fix ? 1 : 0;
  std::uint64_t outer_total = 1;
  for (std::size_t d = first_free; d + 1 < n; ++d) outer_total *= static_cast<std::uint64_t>(k);

  const int threads = std::max(1, std::min<int>(spec.threads, static_cast<int>(outer_total)));
  std::vector<Best> partial(static_cast<std::size_t>(threads));
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
      const std::uint64_t begin = outer_total * static_cast<std::uint64_t>(t) / threads;
      const std::uint64_t end = outer_total * static_cast<std::uint64_t>(t + 1) / threads;
      pool.emplace_back([&, t, begin, end] {
        partial[static_cast<std::size_t>(t)] =
            scan_range(obs.data, k, first_free, begin, end, cos_table, sin_table, phases);
      });
    }
  }
  // Chunks are in index order, so a strict comparison keeps the smallest index on ties.
  Best best = partial.front();
  for (const Best& b : partial) {
    if (b.value > best.value) best = b;
  }

  GridResult result;
  result.objective = best.value;
  result.indices.assign(n, 0);
  std::uint64_t rest = best.flat;
  for (std::size_t d = n; d-- > first_free;) {
    result.indices[d] = static_cast<int>(rest % static_cast<std::uint64_t>(k));
    rest /= static_cast<std::uint64_t>(k);
  }
  ComplexVector z(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = phases[static_cast<std::size_t>(result.indices[j])];
  result.estimate = PhaseVector(std::move(z));
  return result;
}

std::vector<EigPair> jacobi_eig(const HermitianMatrix& m, double tol) {
  const std::size_t n = m.dim();
  if (n > 512) throw Error(ErrorKind::kGuardViolation, "jacobi_eig: n > 512");
  if (!(tol > 0.0)) throw Error(ErrorKind::kInvalidArgument, "jacobi_eig: tol must be > 0");

  std::vector<cplx> a(m.entries().begin(), m.entries().end());
  std::vector<cplx> v(n * n, cplx{});
  for (std::size_t j = 0; j < n; ++j) v[j * n + j] = 1.0;
  auto at = [n](std::vector<cplx>& x, std::size_t r, std::size_t c) -> cplx& { return x[r * n + c]; };

  const auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) s += std::norm(a[r * n + c]);
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() >= tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx beta = at(a, p, q);
        const double mag = std::abs(beta);
        if (mag == 0.0) continue;
        const cplx phase = beta / mag;  // e^{i phi}
        const double alpha = at(a, p, p).real();
        const double gamma = at(a, q, q).real();
        const double tau = (gamma - alpha) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
        const cplx u00 = c, u01 = s;
        const cplx u10 = -s * std::conj(phase), u11 = c * std::conj(phase);

        for (std::size_t r = 0; r < n; ++r) {
          const cplx arp = at(a, r, p), arq = at(a, r, q);
          at(a, r, p) = arp * u00 + arq * u10;
          at(a, r, q) = arp * u01 + arq * u11;
          const cplx vrp = at(v, r, p), vrq = at(v, r, q);
          at(v, r, p) = vrp * u00 + vrq * u10;
          at(v, r, q) = vrp * u01 + vrq * u11;
        }
        for (std::size_t col = 0; col < n; ++col) {
          const cplx apc = at(a, p, col), aqc = at(a, q, col);
          at(a, p, col) = std::conj(u00) * apc + std::conj(u10) * aqc;
          at(a, q, col) = std::conj(u01) * apc + std::conj(u11) * aqc;
        }
        at(a, p, q) = 0.0;
        at(a, q, p) = 0.0;
        at(a, p, p) = at(a, p, p).real();
        at(a, q, q) = at(a, q, q).real();
      }
    }
  }

  std::vector<EigPair> pairs(n);
  for (std::size_t j = 0; j < n; ++j) {
    pairs[j].value = at(a, j, j).real();
    pairs[j].vector.resize(n);
    for (std::size_t r = 0; r < n; ++r) pairs[j].vector[r] = at(v, r, j);
    pairs[j].converged = true;
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigPair& x, const EigPair& y) { return x.value > y.value; });
  return pairs;
}

Mat2 mc_fisher(double a, double c, const ModelParams& params, int n_samples, std::uint64_t seed) {
  if (n_samples < 10000) throw Error(ErrorKind::kInvalidArgument, "mc_fisher: need >= 1e4 samples");
  const FisherComponents reference = fisher_blocks(a, c, params);  // validates inputs
  (void)reference;

  const double sigma2 = params.sigma * params.sigma;
  const double half_var = 0.5 * sigma2;
  const std::size_t stars = params.n - 2;
  constexpr double h = 1e-5;
  Xoshiro256 rng(stream_seed(seed, Stream::kFisherSamples));

  const auto unit = [](double x) { return std::array<double, 2>{x, std::sqrt(1.0 - x * x)}; };

  double mean0 = 0.0, mean1 = 0.0;
  double s00 = 0.0, s01 = 0.0, s11 = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const bool edge = uniform01(rng) < params.p;
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < stars; ++j) m1 += uniform01(rng) < params.p ? 1.0 : 0.0;
    for (std::size_t j = 0; j < stars; ++j) m2 += uniform01(rng) < params.p ? 1.0 : 0.0;

    const TsPoint ts = ts_map(a, c);
    const auto ua = unit(a), uc = unit(c);
    const double noise_sd = std::sqrt(half_var);
    std::array<double, 2> y{0.0, 0.0}, xi{0.0, 0.0}, zeta{0.0, 0.0};
    if (edge) {
      y = {ts.t + noise_sd * standard_normal(rng), ts.s + noise_sd * standard_normal(rng)};
    }
    if (m1 > 0.0) {
      const double sd = std::sqrt(m1 * half_var);
      xi = {m1 * ua[0] + sd * standard_normal(rng), m1 * ua[1] + sd * standard_normal(rng)};
    }
    if (m2 > 0.0) {
      const double sd = std::sqrt(m2 * half_var);
      zeta = {m2 * uc[0] + sd * standard_normal(rng), m2 * uc[1] + sd * standard_normal(rng)};
    }

    const auto loglik = [&](double aa, double cc) {
      double ll = 0.0;
      if (edge) {
        const TsPoint m = ts_map(aa, cc);
        ll -= ((y[0] - m.t) * (y[0] - m.t) + (y[1] - m.s) * (y[1] - m.s)) / sigma2;
      }
      if (m1 > 0.0) {
        const auto u = unit(aa);
        ll -= ((xi[0] - m1 * u[0]) * (xi[0] - m1 * u[0]) + (xi[1] - m1 * u[1]) * (xi[1] - m1 * u[1])) /
              (m1 * sigma2);
      }
      if (m2 > 0.0) {
        const auto u = unit(cc);
        ll -= ((zeta[0] - m2 * u[0]) * (zeta[0] - m2 * u[0]) +
               (zeta[1] - m2 * u[1]) * (zeta[1] - m2 * u[1])) /
              (m2 * sigma2);
      }
      return ll;
    };
    const double g0 = (loglik(a + h, c) - loglik(a - h, c)) / (2.0 * h);
    const double g1 = (loglik(a, c + h) - loglik(a, c - h)) / (2.0 * h);

    // Welford update of the 2x2 covariance.
    const double count = i + 1.0;
    const double d0 = g0 - mean0, d1 = g1 - mean1;
    mean0 += d0 / count;
    mean1 += d1 / count;
    s00 += d0 * (g0 - mean0);
    s01 += d0 * (g1 - mean1);
    s11 += d1 * (g1 - mean1);
  }
  const double denom = n_samples - 1.0;
  return {{{s00 / denom, s01 / denom}, {s01 / denom, s11 / denom}}};
}

}  // namespace phasync::oracle
