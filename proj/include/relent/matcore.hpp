#pragma once

// Dense complex matrix kernel for the small (<= 9x9) operators used across
// the library: products, Kronecker products, partial transpose, Hermitian
// eigendecomposition and PSD square roots.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace relent {

using Complex = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input leaves the domain of a numerical routine
/// (negative radicand, materially negative eigenvalue, no convergence).
class NumericalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Default per-entry tolerance for matrix equality.
inline constexpr double kEntryTolerance = 1e-12;

/// Square matrix of complex scalars stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |ket><bra|
  static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);
  /// |v><v|
  static ComplexMatrix projector(std::span<const Complex> v);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  bool is_hermitian(double tol = kEntryTolerance) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) { return lhs *= scale; }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) { return rhs *= scale; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kEntryTolerance);
double frobenius_norm(const ComplexMatrix& m);

/// Tensor factorisation dA (x) dB of a matrix dimension.
struct BipartiteDims {
  std::size_t dA = 0;
  std::size_t dB = 0;

  std::size_t total() const noexcept { return dA * dB; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

enum class Party { A, B };

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b);

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims, Party party);
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Party traced);

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Cyclic complex Jacobi. Sweeps pivots in row order (p < q) until every
/// off-diagonal modulus is below 1e-13 (scaled by the Frobenius norm for
/// matrices larger than unit norm). Input must be Hermitian within 1e-10.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Principal square root of a PSD Hermitian matrix. Eigenvalues down to
/// -1e-8 are clamped to zero; anything more negative throws NumericalError.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Tr[(a-b)^dagger (a-b)].
double hs_distance_sq(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace relent
