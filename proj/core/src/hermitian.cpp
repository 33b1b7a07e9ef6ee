#include "phasync/hermitian.hpp"

#include <cmath>
#include <string>

#include "phasync/error.hpp"
#include "phasync/random.hpp"

namespace phasync {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::kDimensionMismatch, std::string(what) + ": dimension " +
                                                   std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(std::size_t n) : n_(n), entries_(n * n, cplx{0.0, 0.0}) {}

HermitianMatrix HermitianMatrix::from_dense(std::size_t n, std::vector<cplx> entries) {
  require_same_dim(entries.size(), n * n, "HermitianMatrix::from_dense");
  for (std::size_t j = 0; j < n; ++j) {
    if (entries[j * n + j].imag() != 0.0) {
      throw Error(ErrorKind::kNotHermitian,
                  "diagonal entry " + std::to_string(j) + " has nonzero imaginary part");
    }
    for (std::size_t k = j + 1; k < n; ++k) {
      if (entries[j * n + k] != std::conj(entries[k * n + j])) {
        throw Error(ErrorKind::kNotHermitian, "entry (" + std::to_string(j) + "," +
                                                  std::to_string(k) +
                                                  ") is not the conjugate of its mirror");
      }
    }
  }
  HermitianMatrix m;
  m.n_ = n;
  m.entries_ = std::move(entries);
  return m;
}

void HermitianMatrix::set(std::size_t j, std::size_t k, cplx value) {
  if (j >= n_ || k >= n_) {
    throw Error(ErrorKind::kInvalidArgument, "HermitianMatrix::set: index out of range");
  }
  if (j == k) {
    if (value.imag() != 0.0) {
      throw Error(ErrorKind::kNotHermitian, "diagonal entries must be real");
    }
    entries_[j * n_ + j] = value;
    return;
  }
  entries_[j * n_ + k] = value;
  entries_[k * n_ + j] = std::conj(value);
}

bool HermitianMatrix::has_zero_diagonal() const noexcept {
  for (std::size_t j = 0; j < n_; ++j) {
    if (entries_[j * n_ + j] != cplx{}) return false;
  }
  return true;
}

bool HermitianMatrix::is_zero() const noexcept {
  for (const cplx& e : entries_) {
    if (e != cplx{}) return false;
  }
  return true;
}

HermitianMatrix HermitianMatrix::shifted(double s) const {
  HermitianMatrix out = *this;
  for (std::size_t j = 0; j < n_; ++j) out.entries_[j * n_ + j] += s;
  return out;
}

double HermitianMatrix::gershgorin_radius() const noexcept {
  double best = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    double sum = 0.0;
    for (const cplx& e : row(j)) sum += std::abs(e);
    best = std::max(best, sum);
  }
  return best;
}

HermitianMatrix hadamard_mask(const HermitianMatrix& data, const HermitianMatrix& mask) {
  require_same_dim(data.dim(), mask.dim(), "hadamard_mask");
  if (!data.has_zero_diagonal() || !mask.has_zero_diagonal()) {
    throw Error(ErrorKind::kInvalidArgument, "hadamard_mask: operands must have zero diagonal");
  }
  const std::size_t n = data.dim();
  HermitianMatrix out(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const cplx a = mask(j, k);
      if (a != cplx{0.0, 0.0} && a != cplx{1.0, 0.0}) {
        throw Error(ErrorKind::kInvalidArgument,
                    "hadamard_mask: mask entry (" + std::to_string(j) + "," + std::to_string(k) +
                        ") is not 0 or 1");
      }
      if (a.real() == 1.0) out.set(j, k, data(j, k));
    }
  }
  return out;
}

void matvec_into(const HermitianMatrix& m, std::span<const cplx> v, std::span<cplx> out) {
  require_same_dim(m.dim(), v.size(), "matvec");
  require_same_dim(m.dim(), out.size(), "matvec output");
  const std::size_t n = m.dim();
  // Split real arithmetic: std::complex operator* carries NaN/Inf recovery
  // branches that block vectorisation.
  for (std::size_t j = 0; j < n; ++j) {
    const cplx* row = m.row(j).data();
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double a = row[k].real(), b = row[k].imag();
      const double c = v[k].real(), d = v[k].imag();
      re += a * c - b * d;
      im += a * d + b * c;
    }
    out[j] = {re, im};
  }
}

ComplexVector matvec(const HermitianMatrix& m, std::span<const cplx> v) {
  ComplexVector out(m.dim());
  matvec_into(m, v, out);
  return out;
}

double norm2(std::span<const cplx> v) noexcept {
  double sum = 0.0;
  for (const cplx& x : v) sum += std::norm(x);
  return std::sqrt(sum);
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) noexcept {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    // conj(u) * v
    re += u[j].real() * v[j].real() + u[j].imag() * v[j].imag();
    im += u[j].real() * v[j].imag() - u[j].imag() * v[j].real();
  }
  return {re, im};
}

double rayleigh_quotient(const HermitianMatrix& m, std::span<const cplx> v) {
  const ComplexVector mv = matvec(m, v);
  return inner(v, mv).real() / inner(v, v).real();
}

EigPair leading_eigenvector(const HermitianMatrix& m, const PowerIterationOptions& options) {
  if (!(options.tol > 0.0) || options.max_iter < 1) {
    throw Error(ErrorKind::kInvalidArgument, "leading_eigenvector: need tol > 0 and max_iter >= 1");
  }
  if (m.is_zero()) {
    throw Error(ErrorKind::kDegenerate, "zero matrix has no distinguished leading eigenvector");
  }
  const std::size_t n = m.dim();
  const double shift = m.gershgorin_radius();

  Xoshiro256 rng(options.seed);
  ComplexVector v(n);
  for (cplx& x : v) x = {2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
  {
    const double nv = norm2(v);
    for (cplx& x : v) x /= nv;
  }

  EigPair result;
  ComplexVector w(n);
  for (int it = 1; it <= options.max_iter; ++it) {
    matvec_into(m, v, w);
    for (std::size_t j = 0; j < n; ++j) w[j] += shift * v[j];
    const double nw = norm2(w);
    if (nw == 0.0) {
      // Start vector landed in the null space of M + sI; only possible when
      // the shifted matrix is singular in that direction.
      throw Error(ErrorKind::kDegenerate, "leading_eigenvector: iterate collapsed to zero");
    }
    for (cplx& x : w) x /= nw;
    const double angle = 1.0 - std::abs(inner(w, v));
    v.swap(w);
    result.iterations = it;
    if (angle < options.tol) {
      result.converged = true;
      break;
    }
  }
  result.value = rayleigh_quotient(m, v);
  result.vector = std::move(v);
  return result;
}

}  // namespace phasync
