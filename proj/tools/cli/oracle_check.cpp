#include "cli/oracle_check.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cli/format.hpp"
#include "phasync/error.hpp"
#include "phasync/estimators.hpp"
#include "phasync/lower_bound.hpp"
#include "phasync/oracle.hpp"
#include "phasync/random.hpp"

namespace phasync::cli {

namespace {

// Multiplies by the transpose instead of the Hermitian data matrix.
PhaseVector faulty_step(const Observation& obs, const PhaseVector& z) {
  ComplexVector zc(z.entries().begin(), z.entries().end());
  for (cplx& x : zc) x = std::conj(x);
  ComplexVector w = matvec(obs.data, zc);
  for (cplx& x : w) x = std::conj(x);
  return project_to_circle(w);
}

CheckResult check_grid(const OracleCheckOptions& o) {
  CheckResult r{"grid", true, {}};
  std::ostringstream detail;
  const double n = static_cast<double>(o.grid_n);
  for (int i = 0; i < o.grid_instances; ++i) {
    const ModelParams params{o.grid_n, 1.0, 0.1, mix64(o.seed, 0x67726964, static_cast<std::uint64_t>(i))};
    const PhaseVector truth = sample_truth(params);
    const Observation obs = sample_observation(truth, params);
    const SpectralOptions spectral{.seed = stream_seed(params.seed, Stream::kEigenStart)};
    const GpmConfig config{};
    const EstimateResult est =
        o.inject_fault ? gpm(obs, spectral_init(obs, spectral), config, std::nullopt, faulty_step)
                       : mle(obs, config, std::nullopt, spectral);
    const double fast = mle_objective(obs, est.estimate.entries());
    const oracle::GridResult grid =
        oracle::grid_mle(obs, {.resolution = o.grid_resolution, .gauge_fix = true, .threads = o.threads});
    const bool ok = fast >= grid.objective - 1e-6 * n * n;
    r.passed = r.passed && ok;
    detail << (i ? "; " : "") << "instance " << i << ": gpm " << format_double(fast) << " grid "
           << format_double(grid.objective) << (ok ? "" : " (below grid optimum)");
  }
  r.detail = detail.str();
  return r;
}

CheckResult check_jacobi(const OracleCheckOptions& o) {
  CheckResult r{"jacobi", true, {}};
  constexpr std::size_t kDim = 8;
  Xoshiro256 rng(mix64(o.seed, 0x6a61636f));
  HermitianMatrix m(kDim);
  for (std::size_t j = 0; j < kDim; ++j) {
    m.set(j, j, cplx{standard_normal(rng), 0.0});
    for (std::size_t k = j + 1; k < kDim; ++k) m.set(j, k, complex_normal(rng));
  }
  const std::vector<EigPair> all = oracle::jacobi_eig(m, 1e-13);
  const EigPair top = leading_eigenvector(m, {.tol = 1e-15, .max_iter = 100000, .seed = o.seed});
  const double value_gap = std::abs(all.front().value - top.value);
  const cplx overlap = inner(all.front().vector, top.vector);
  double vec_err = 0.0;
  const cplx phase = overlap / std::abs(overlap);
  for (std::size_t j = 0; j < kDim; ++j) {
    vec_err = std::max(vec_err, std::abs(all.front().vector[j] * phase - top.vector[j]));
  }
  r.passed = value_gap <= 1e-9 && vec_err <= 1e-6;
  r.detail = "eigenvalue gap " + format_double(value_gap) + ", aligned eigenvector error " +
             format_double(vec_err);
  return r;
}

CheckResult check_fisher(const OracleCheckOptions& o) {
  CheckResult r{"fisher", true, {}};
  const ModelParams params{100, 1.0, 1.0, 0};
  const FisherComponents fc = fisher_blocks(0.5, 0.5, params);
  const Mat2 closed = fc.b1 + fc.b2;
  const Mat2 mc = oracle::mc_fisher(0.5, 0.5, params, o.fisher_samples, o.seed);
  const double e0 = std::abs(mc[0][0] / closed[0][0] - 1.0);
  const double e1 = std::abs(mc[1][1] / closed[1][1] - 1.0);
  r.passed = e0 <= 0.05 && e1 <= 0.05;
  r.detail = "relative diagonal error " + format_double(e0) + ", " + format_double(e1);
  return r;
}

}  // namespace

std::vector<CheckResult> run_oracle_checks(const OracleCheckOptions& options) {
  for (const std::string& name : options.checks) {
    if (name != "grid" && name != "jacobi" && name != "fisher") {
      throw Error(ErrorKind::kInvalidArgument, "unknown check '" + name + "'");
    }
  }
  const auto wanted = [&](const char* name) {
    return std::find(options.checks.begin(), options.checks.end(), name) != options.checks.end();
  };
  std::vector<CheckResult> results;
  if (wanted("grid")) results.push_back(check_grid(options));
  if (wanted("jacobi")) results.push_back(check_jacobi(options));
  if (wanted("fisher")) results.push_back(check_fisher(options));
  return results;
}

}  // namespace phasync::cli
