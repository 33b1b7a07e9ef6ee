#include "cli/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "phasync/error.hpp"
#include "phasync/random.hpp"

namespace phasync::cli {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::kSpectral: return "spectral";
    case Method::kGpm: return "gpm";
    case Method::kMle: return "mle";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "spectral") return Method::kSpectral;
  if (name == "gpm") return Method::kGpm;
  if (name == "mle") return Method::kMle;
  throw Error(ErrorKind::kInvalidArgument, "unknown method '" + std::string(name) + "'");
}

std::vector<GridPoint> expand_grid(const SweepSpec& spec) {
  std::vector<GridPoint> grid;
  for (std::size_t n : spec.n)
    for (double p : spec.p)
      for (double sigma : spec.sigma) grid.push_back({grid.size(), n, p, sigma});
  return grid;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t grid_index, int trial) noexcept {
  return mix64(base_seed, static_cast<std::uint64_t>(grid_index), static_cast<std::uint64_t>(trial));
}

namespace {

double inf_distance(const PhaseVector& a, const PhaseVector& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

}  // namespace

std::vector<ExperimentRecord> run_trial(const GridPoint& point, int trial, const SweepSpec& spec) {
  const ModelParams params{point.n, point.p, point.sigma,
                           trial_seed(spec.seed, point.grid_index, trial)};
  params.validate();
  const PhaseVector truth = sample_truth(params);
  const Observation obs = sample_observation(truth, params);
  const SpectralOptions spectral{.seed = stream_seed(params.seed, Stream::kEigenStart)};

  std::vector<ExperimentRecord> out;
  for (Method method : spec.methods) {
    ExperimentRecord rec;
    rec.n = params.n;
    rec.p = params.p;
    rec.sigma = params.sigma;
    rec.seed = params.seed;
    rec.trial = trial;
    rec.method = method;
    rec.theory_risk = params.theory_risk();

    const auto start = std::chrono::steady_clock::now();
    if (method == Method::kSpectral) {
      const SpectralInit init = spectral_init_with_diagnostics(obs, spectral);
      rec.loss = loss(init.z0, truth);
      rec.iterations = init.eig_iterations;
      rec.residual = inf_distance(gpm_step(obs, init.z0), init.z0);
      rec.converged = init.eig_converged;
    } else {
      const EstimateResult est = method == Method::kMle
                                     ? mle(obs, spec.gpm, std::nullopt, spectral)
                                     : gpm(obs, spectral_init(obs, spectral), spec.gpm);
      rec.loss = loss(est.estimate, truth);
      rec.iterations = est.iterations;
      rec.residual = est.residual;
      rec.converged = est.converged;
    }
    if (spec.timing) {
      rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                        .count();
    }
    out.push_back(rec);
  }
  return out;
}

std::vector<ExperimentRecord> run_sweep(const SweepSpec& spec, int threads) {
  if (spec.trials < 1) throw Error(ErrorKind::kInvalidArgument, "trials must be >= 1");
  if (spec.methods.empty()) throw Error(ErrorKind::kInvalidArgument, "no method requested");
  const std::vector<GridPoint> grid = expand_grid(spec);
  for (const GridPoint& g : grid) ModelParams{g.n, g.p, g.sigma, 0}.validate();
  spec.gpm.validate();

  const std::size_t tasks = grid.size() * static_cast<std::size_t>(spec.trials);
  std::vector<std::vector<ExperimentRecord>> slots(tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  const auto worker = [&] {
    for (std::size_t task = next++; task < tasks && !failed; task = next++) {
      const GridPoint& g = grid[task / static_cast<std::size_t>(spec.trials)];
      const int trial = static_cast<int>(task % static_cast<std::size_t>(spec.trials));
      try {
        slots[task] = run_trial(g, trial, spec);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const int workers = std::clamp<int>(threads, 1, static_cast<int>(std::max<std::size_t>(tasks, 1)));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ExperimentRecord> records;
  records.reserve(tasks * spec.methods.size());
  for (auto& slot : slots)
    for (auto& rec : slot) records.push_back(rec);
  return records;
}

std::vector<Summary> summarize(const std::vector<ExperimentRecord>& records) {
  struct Acc {
    Summary s;
    std::vector<double> losses;
  };
  std::vector<Acc> groups;
  for (const ExperimentRecord& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Acc& a) {
      return a.s.n == r.n && a.s.p == r.p && a.s.sigma == r.sigma && a.s.method == r.method;
    });
    if (it == groups.end()) {
      groups.push_back({Summary{r.n, r.p, r.sigma, r.method}, {}});
      it = groups.end() - 1;
    }
    it->losses.push_back(r.loss);
  }

  std::vector<Summary> out;
  for (Acc& g : groups) {
    const double count = static_cast<double>(g.losses.size());
    double sum = 0.0;
    for (double x : g.losses) sum += x;
    const double mean = sum / count;
    double ss = 0.0;
    for (double x : g.losses) ss += (x - mean) * (x - mean);
    g.s.trials = static_cast<int>(g.losses.size());
    g.s.mean_loss = mean;
    g.s.std_error = g.losses.size() > 1 ? std::sqrt(ss / (count - 1.0)) / std::sqrt(count) : 0.0;
    g.s.theory_risk = g.s.sigma * g.s.sigma / (2.0 * g.s.p);
    g.s.ratio = g.s.theory_risk > 0.0 ? mean / g.s.theory_risk
                                      : std::numeric_limits<double>::quiet_NaN();
    out.push_back(g.s);
  }
  return out;
}

}  // namespace phasync::cli
