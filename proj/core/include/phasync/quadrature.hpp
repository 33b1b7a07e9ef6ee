#pragma once

#include <vector>

namespace phasync {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [lo, hi]. Nodes by Newton's method
/// on the three-term Legendre recurrence, converged to machine precision.
QuadratureRule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

}  // namespace phasync
