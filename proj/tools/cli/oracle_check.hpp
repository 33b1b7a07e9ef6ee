#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phasync::cli {

struct OracleCheckOptions {
  std::vector<std::string> checks{"grid", "jacobi", "fisher"};
  std::uint64_t seed = 0;
  std::size_t grid_n = 4;
  int grid_resolution = 400;
  int grid_instances = 3;
  int fisher_samples = 100000;
  int threads = 1;
  bool inject_fault = false;  // GPM step multiplies by the transpose of the data
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the requested oracle-vs-fast-path comparisons. Throws
/// phasync::Error(kGuardViolation) when an oracle refuses its input and
/// kInvalidArgument for an unknown check name.
std::vector<CheckResult> run_oracle_checks(const OracleCheckOptions& options);

}  // namespace phasync::cli
