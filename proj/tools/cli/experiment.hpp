#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "phasync/estimators.hpp"
#include "phasync/model.hpp"

namespace phasync::cli {

enum class Method { kSpectral, kGpm, kMle };

std::string_view to_string(Method m) noexcept;
/// Throws kInvalidArgument for anything but spectral|gpm|mle.
Method parse_method(std::string_view name);

struct ExperimentRecord {
  std::size_t n = 0;
  double p = 0.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;  // derived per-trial seed; regenerates the instance on its own
  int trial = 0;
  Method method = Method::kMle;
  double loss = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  double wall_ms = 0.0;
  double theory_risk = 0.0;
};

struct SweepSpec {
  std::vector<std::size_t> n;
  std::vector<double> p;
  std::vector<double> sigma;
  std::vector<Method> methods;
  int trials = 1;
  std::uint64_t seed = 0;
  GpmConfig gpm;
  bool timing = false;  // when false wall_ms is written as 0 so output is reproducible
};

struct GridPoint {
  std::size_t grid_index = 0;
  std::size_t n = 0;
  double p = 0.0;
  double sigma = 0.0;
};

/// Cartesian product of n x p x sigma in document order (n slowest).
std::vector<GridPoint> expand_grid(const SweepSpec& spec);

/// trial seed = mix64(base_seed, grid_index, trial_index).
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t grid_index, int trial) noexcept;

/// Generates one instance and runs every requested method on it, one record
/// per method in the order given.
std::vector<ExperimentRecord> run_trial(const GridPoint& point, int trial, const SweepSpec& spec);

/// Runs all (grid point, trial) pairs on `threads` workers. Records come back
/// in (grid_index, trial, method) order whatever the completion order.
std::vector<ExperimentRecord> run_sweep(const SweepSpec& spec, int threads);

struct Summary {
  std::size_t n = 0;
  double p = 0.0;
  double sigma = 0.0;
  Method method = Method::kMle;
  int trials = 0;
  double mean_loss = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(trials)
  double theory_risk = 0.0;
  double ratio = 0.0;      // mean_loss / theory_risk; NaN when theory_risk = 0
};

/// One summary per (n, p, sigma, method), in first-appearance order. Sums are
/// taken in record order so recomputation from parsed rows is exact.
std::vector<Summary> summarize(const std::vector<ExperimentRecord>& records);

}  // namespace phasync::cli
