#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace phasync {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Dense n x n complex Hermitian matrix, row-major, both triangles stored.
///
/// The only mutator is set(), which writes an entry and its conjugate mirror
/// together, so a HermitianMatrix is Hermitian at every point of its life.
/// Diagonal entries are real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Zero matrix of dimension n.
  explicit HermitianMatrix(std::size_t n);

  /// Validates a row-major buffer. Throws kNotHermitian unless
  /// entries[j*n+k] == conj(entries[k*n+j]) exactly and the diagonal is real.
  static HermitianMatrix from_dense(std::size_t n, std::vector<cplx> entries);

  /// Sets (j, k) to value and (k, j) to conj(value). For j == k the value
  /// must be real.
  void set(std::size_t j, std::size_t k, cplx value);

  std::size_t dim() const noexcept { return n_; }
  cplx operator()(std::size_t j, std::size_t k) const noexcept {
    return entries_[j * n_ + k];
  }
  std::span<const cplx> row(std::size_t j) const noexcept {
    return {entries_.data() + j * n_, n_};
  }
  std::span<const cplx> entries() const noexcept { return entries_; }

  bool has_zero_diagonal() const noexcept;
  bool is_zero() const noexcept;

  /// M + s I.
  HermitianMatrix shifted(double s) const;

  /// Largest absolute row sum, max_j sum_k |M[j][k]|.
  double gershgorin_radius() const noexcept;

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> entries_;
};

/// Entrywise product of data and a 0/1 mask. Both operands must have zero
/// diagonal; throws kDimensionMismatch or kInvalidArgument otherwise.
HermitianMatrix hadamard_mask(const HermitianMatrix& data, const HermitianMatrix& mask);

/// Dense product M v.
ComplexVector matvec(const HermitianMatrix& m, std::span<const cplx> v);

/// Writes M v into out (out.size() == v.size() == dim). No allocation.
void matvec_into(const HermitianMatrix& m, std::span<const cplx> v, std::span<cplx> out);

struct EigPair {
  double value = 0.0;
  ComplexVector vector;  // unit Euclidean norm
  int iterations = 0;
  bool converged = false;
};

struct PowerIterationOptions {
  double tol = 1e-14;
  int max_iter = 10000;
  std::uint64_t seed = 0;
};

/// Leading (algebraically largest) eigenpair by power iteration on
/// M + sI, s = gershgorin_radius(M), so the shifted matrix is positive
/// semidefinite. Stops when 1 - |v_t^H v_{t-1}| < tol; at max_iter the pair
/// is returned with converged = false. The eigenvector is defined only up to
/// a global phase.
///
/// Throws kDegenerate for the zero matrix.
EigPair leading_eigenvector(const HermitianMatrix& m, const PowerIterationOptions& options = {});

/// Euclidean norm and Hermitian inner product u^H v.
double norm2(std::span<const cplx> v) noexcept;
cplx inner(std::span<const cplx> u, std::span<const cplx> v) noexcept;

/// Rayleigh quotient v^H M v / v^H v (real part).
double rayleigh_quotient(const HermitianMatrix& m, std::span<const cplx> v);

}  // namespace phasync
