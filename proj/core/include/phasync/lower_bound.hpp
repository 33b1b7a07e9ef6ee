#pragma once

#include <array>

#include "phasync/model.hpp"

namespace phasync {

using Mat2 = std::array<std::array<double, 2>, 2>;

Mat2 transpose(const Mat2& m) noexcept;
Mat2 operator*(const Mat2& x, const Mat2& y) noexcept;
Mat2 operator+(const Mat2& x, const Mat2& y) noexcept;
Mat2 inverse(const Mat2& m);
double trace(const Mat2& m) noexcept;
double frobenius_squared(const Mat2& m) noexcept;

// Two-coordinate reduction of the lower bound. With z1 = a + i sqrt(1-a^2)
// and z2 = c + i sqrt(1-c^2), the target z1 conj(z2) = T(a,c) + i S(a,c).

struct TsPoint {
  double t = 0.0;
  double s = 0.0;
};

/// T = ac + sqrt(1-a^2) sqrt(1-c^2), S = sqrt(1-a^2) c - a sqrt(1-c^2).
/// Requires a, c in [0, 1).
TsPoint ts_map(double a, double c);

/// d(T, S)/d(a, c), rows (T, S), columns (a, c). Requires a, c in (0, 1).
Mat2 jacobian(double a, double c);

struct FisherComponents {
  Mat2 jac{};
  Mat2 b1{};  // direct edge (1,2)
  Mat2 b2{};  // the two stars {1j}, {2j}, j >= 3; diagonal
};

/// B1 = (2p/sigma^2) [[T_a^2 + S_a^2, T_a T_c], [T_a T_c, T_c^2 + S_c^2]],
/// B2 = (2(n-2)p/sigma^2) diag(1/(1-a^2), 1/(1-c^2)).
/// Throws kInvalidArgument for sigma = 0 (infinite information).
FisherComponents fisher_blocks(double a, double c, const ModelParams& params);

/// ||B2^{-1/2} A^T||_F^2; equals sigma^2 / ((n-2) p) for every (a, c).
double star_information_identity(double a, double c, const ModelParams& params);

enum class DirectEdge { kInclude, kExclude };

/// tr(A (B1 + B2)^{-1} A^T); with DirectEdge::kExclude, B1 is dropped.
double trace_j(double a, double c, const ModelParams& params,
               DirectEdge edge = DirectEdge::kInclude);

/// Smooth bump prior f(x) proportional to exp(-1/(1-u^2)), u = (x - mid)/half,
/// on (lo, hi) and zero outside; normalised by Gauss-Legendre quadrature.
class PriorDensity {
 public:
  static PriorDensity mollifier(double lo = 0.4, double hi = 0.6);

  double operator()(double x) const noexcept;
  double derivative(double x) const noexcept;

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double normalization() const noexcept { return norm_; }

 private:
  PriorDensity(double lo, double hi);
  double lo_, hi_, mid_, half_, norm_ = 1.0;
};

struct LowerBoundOptions {
  int quad_points = 400;
  double fd_step = 1e-5;
};

/// Prior information term of the van Trees bound,
///   I(f) = int 1/(f1 f2) sum_j (sum_k d/dtheta_k [K_jk f1 f2])^2 dtheta,
/// K = A (B1 + B2)^{-1}, by a tensor Gauss-Legendre rule on the prior
/// support and central differences in theta. Points where f1 f2 < 1e-12
/// contribute zero.
double prior_information(const PriorDensity& f, const ModelParams& params,
                         const LowerBoundOptions& options = {});

struct PairBound {
  double value = 0.0;        // trace_term - prior_information
  double trace_term = 0.0;   // int int tr J(a,c) f(a) f(c)
  double prior_information = 0.0;
  /// Set when value < 0: I(f) dominates, i.e. sigma^2 is not small next to np.
  bool regime_warning = false;
};

/// van Trees lower bound on the Bayes risk of estimating z1 conj(z2).
PairBound van_trees_pair_bound(const ModelParams& params, const PriorDensity& f,
                               const LowerBoundOptions& options = {});

struct MinimaxBound {
  PairBound pair;
  double aggregate = 0.0;           // (n-1)/2 * pair.value
  double closed_form_target = 0.0;  // sigma^2 / (2p)
  double ratio = 0.0;               // aggregate / closed_form_target
};

/// Sums the n(n-1) identical pair bounds with the 1/(2n) weight of the
/// Frobenius reduction of the quotient loss.
MinimaxBound minimax_lower_bound(const ModelParams& params, const PriorDensity& f,
                                 const LowerBoundOptions& options = {});

}  // namespace phasync
