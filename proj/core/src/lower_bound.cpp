#include "phasync/lower_bound.hpp"

#include <cmath>
#include <string>

#include "phasync/error.hpp"
#include "phasync/quadrature.hpp"

namespace phasync {

Mat2 transpose(const Mat2& m) noexcept { return {{{m[0][0], m[1][0]}, {m[0][1], m[1][1]}}}; }

Mat2 operator*(const Mat2& x, const Mat2& y) noexcept {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

Mat2 operator+(const Mat2& x, const Mat2& y) noexcept {
  return {{{x[0][0] + y[0][0], x[0][1] + y[0][1]}, {x[1][0] + y[1][0], x[1][1] + y[1][1]}}};
}

Mat2 inverse(const Mat2& m) {
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det == 0.0 || !std::isfinite(det)) {
    throw Error(ErrorKind::kDegenerate, "inverse: singular 2x2 matrix");
  }
  return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

double trace(const Mat2& m) noexcept { return m[0][0] + m[1][1]; }

double frobenius_squared(const Mat2& m) noexcept {
  return m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1];
}

namespace {

void require_half_open(double a, double c) {
  if (!(a >= 0.0 && a < 1.0) || !(c >= 0.0 && c < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "ts_map: a and c must lie in [0, 1)");
  }
}

void require_open(double a, double c) {
  if (!(a > 0.0 && a < 1.0) || !(c > 0.0 && c < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "jacobian: a and c must lie strictly inside (0, 1)");
  }
}

void require_information(const ModelParams& params) {
  params.validate();
  if (params.sigma == 0.0) {
    throw Error(ErrorKind::kInvalidArgument,
                "sigma = 0: Fisher information is infinite and the lower bound is the trivial 0");
  }
  if (params.n < 3) {
    throw Error(ErrorKind::kInvalidArgument, "lower bound needs n >= 3 (no star edges otherwise)");
  }
}

void require_options(const LowerBoundOptions& options) {
  if (options.quad_points < 100) {
    throw Error(ErrorKind::kInvalidArgument, "quad_points must be >= 100");
  }
  if (!(options.fd_step >= 1e-7 && options.fd_step <= 1e-4)) {
    throw Error(ErrorKind::kInvalidArgument, "fd_step must lie in [1e-7, 1e-4]");
  }
}

Mat2 sensitivity(double a, double c, const ModelParams& params) {
  const FisherComponents fc = fisher_blocks(a, c, params);
  return fc.jac * inverse(fc.b1 + fc.b2);
}

}  // namespace

TsPoint ts_map(double a, double c) {
  require_half_open(a, c);
  const double ra = std::sqrt(1.0 - a * a);
  const double rc = std::sqrt(1.0 - c * c);
  return {a * c + ra * rc, ra * c - a * rc};
}

Mat2 jacobian(double a, double c) {
  require_open(a, c);
  const double ra = std::sqrt(1.0 - a * a);
  const double rc = std::sqrt(1.0 - c * c);
  return {{{c - rc * a / ra, a - ra * c / rc}, {-a * c / ra - rc, ra + a * c / rc}}};
}

FisherComponents fisher_blocks(double a, double c, const ModelParams& params) {
  require_information(params);
  FisherComponents fc;
  fc.jac = jacobian(a, c);
  const double ta = fc.jac[0][0], tc = fc.jac[0][1];
  const double sa = fc.jac[1][0], sc = fc.jac[1][1];
  const double edge = 2.0 * params.p / (params.sigma * params.sigma);
  fc.b1 = {{{edge * (ta * ta + sa * sa), edge * ta * tc}, {edge * ta * tc, edge * (tc * tc + sc * sc)}}};
  const double star = edge * static_cast<double>(params.n - 2);
  fc.b2 = {{{star / (1.0 - a * a), 0.0}, {0.0, star / (1.0 - c * c)}}};
  return fc;
}

double star_information_identity(double a, double c, const ModelParams& params) {
  const FisherComponents fc = fisher_blocks(a, c, params);
  const Mat2 scale = {{{1.0 / std::sqrt(fc.b2[0][0]), 0.0}, {0.0, 1.0 / std::sqrt(fc.b2[1][1])}}};
  return frobenius_squared(scale * transpose(fc.jac));
}

double trace_j(double a, double c, const ModelParams& params, DirectEdge edge) {
  const FisherComponents fc = fisher_blocks(a, c, params);
  const Mat2 info = edge == DirectEdge::kInclude ? fc.b1 + fc.b2 : fc.b2;
  return trace(fc.jac * inverse(info) * transpose(fc.jac));
}

PriorDensity::PriorDensity(double lo, double hi)
    : lo_(lo), hi_(hi), mid_(0.5 * (lo + hi)), half_(0.5 * (hi - lo)) {
  const QuadratureRule rule = gauss_legendre(2000, lo, hi);
  double z = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) z += rule.weights[i] * (*this)(rule.nodes[i]);
  norm_ = z;
}

PriorDensity PriorDensity::mollifier(double lo, double hi) {
  if (!(lo > 0.0 && lo < hi && hi < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "prior support must satisfy 0 < lo < hi < 1");
  }
  return PriorDensity(lo, hi);
}

double PriorDensity::operator()(double x) const noexcept {
  const double u = (x - mid_) / half_;
  if (!(std::abs(u) < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u)) / norm_;
}

double PriorDensity::derivative(double x) const noexcept {
  const double u = (x - mid_) / half_;
  if (!(std::abs(u) < 1.0)) return 0.0;
  const double g = 1.0 - u * u;
  return (*this)(x) * (-2.0 * u / (g * g)) / half_;
}

double prior_information(const PriorDensity& f, const ModelParams& params,
                         const LowerBoundOptions& options) {
  require_information(params);
  require_options(options);
  const QuadratureRule rule = gauss_legendre(options.quad_points, f.lo(), f.hi());
  const double h = options.fd_step;
  const auto weighted = [&](double a, double c) {
    const Mat2 k = sensitivity(a, c, params);
    const double ff = f(a) * f(c);
    return Mat2{{{k[0][0] * ff, k[0][1] * ff}, {k[1][0] * ff, k[1][1] * ff}}};
  };

  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double a = rule.nodes[i];
    const double fa = f(a);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double c = rule.nodes[j];
      const double ff = fa * f(c);
      if (ff < 1e-12) continue;
      const Mat2 ap = weighted(a + h, c), am = weighted(a - h, c);
      const Mat2 cp = weighted(a, c + h), cm = weighted(a, c - h);
      double sum_sq = 0.0;
      for (int row = 0; row < 2; ++row) {
        // divergence of row `row` of K f1 f2: d/da K_{row,0} + d/dc K_{row,1}
        const double div = (ap[row][0] - am[row][0]) / (2.0 * h) + (cp[row][1] - cm[row][1]) / (2.0 * h);
        sum_sq += div * div;
      }
      total += rule.weights[i] * rule.weights[j] * sum_sq / ff;
    }
  }
  return total;
}

PairBound van_trees_pair_bound(const ModelParams& params, const PriorDensity& f,
                               const LowerBoundOptions& options) {
  require_information(params);
  require_options(options);
  const QuadratureRule rule = gauss_legendre(options.quad_points, f.lo(), f.hi());
  double trace_term = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double wa = rule.weights[i] * f(rule.nodes[i]);
    if (wa == 0.0) continue;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double wc = rule.weights[j] * f(rule.nodes[j]);
      if (wc == 0.0) continue;
      trace_term += wa * wc * trace_j(rule.nodes[i], rule.nodes[j], params);
    }
  }
  PairBound bound;
  bound.trace_term = trace_term;
  bound.prior_information = prior_information(f, params, options);
  bound.value = trace_term - bound.prior_information;
  bound.regime_warning = bound.value < 0.0;
  return bound;
}

MinimaxBound minimax_lower_bound(const ModelParams& params, const PriorDensity& f,
                                 const LowerBoundOptions& options) {
  MinimaxBound out;
  out.pair = van_trees_pair_bound(params, f, options);
  const double n = static_cast<double>(params.n);
  out.aggregate = n * (n - 1.0) / (2.0 * n) * out.pair.value;
  out.closed_form_target = params.theory_risk();
  out.ratio = out.aggregate / out.closed_form_target;
  return out;
}

}  // namespace phasync
