#pragma once

// Single-particle spin-momentum states with two momentum eigenstates p1, p2.
//
// Basis orderings (momentum is the first tensor factor):
//   spin-1/2: {|p1,0>, |p1,1>, |p2,0>, |p2,1>}
//   spin-1:   {|p1,1>, |p1,0>, |p1,-1>, |p2,1>, |p2,0>, |p2,-1>}

#include <array>
#include <stdexcept>
#include <vector>

#include "relent/matcore.hpp"

namespace relent {

class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr BipartiteDims kSpinHalfDims{2, 2};
inline constexpr BipartiteDims kSpinOneDims{2, 3};

/// Hermitian, unit-trace, positive semidefinite matrix on dA (x) dB.
class DensityMatrix {
 public:
  /// Validates: Hermitian within 1e-12, trace 1 within 1e-12, smallest
  /// eigenvalue >= -1e-10. Throws InvalidStateError otherwise.
  DensityMatrix(ComplexMatrix mat, BipartiteDims dims);

  const ComplexMatrix& mat() const noexcept { return mat_; }
  BipartiteDims dims() const noexcept { return dims_; }
  std::vector<double> eigenvalues() const { return hermitian_eigenvalues(mat_); }

 private:
  ComplexMatrix mat_;
  BipartiteDims dims_;
};

struct BellWeights {
  double p1 = 0.25;
  double p2 = 0.25;
  double p3 = 0.25;
  double p4 = 0.25;

  /// Each weight in [0,1] and sum 1, both within 1e-12.
  void validate() const;
  std::array<double, 4> as_array() const { return {p1, p2, p3, p4}; }
};

struct SpinOneWeights {
  double x = 0.0;
  double y = 0.0;

  /// Eigenvalue constraints 1-x-y, 1+5x-y, 1-x+5y all >= 0 (within 1e-12).
  bool is_physical() const;
  void validate() const;
};

/// |psi_1..4> in the spin-1/2 basis; mutually orthonormal.
std::array<std::vector<Complex>, 4> bell_states();

/// |psi_5>, |psi_6> in the spin-1 basis.
std::array<std::vector<Complex>, 2> spin_one_entangled_states();

/// sum_i p_i |psi_i><psi_i|
DensityMatrix rho_bd(const BellWeights& w);

/// x |psi_5><psi_5| + y |psi_6><psi_6| + (1-x-y)/6 I
DensityMatrix rho_spin1(const SpinOneWeights& w);

/// How the spin-1/2 Wigner rotation axis is assigned to the two momenta.
enum class SpinHalfAxes {
  Shared,    // both branches rotate about +y by the same angle
  Opposite,  // p1 about +y, p2 about -y
};

/// U = sum_i |p_i><p_i| (x) D^(1/2)(omega, n_i).
ComplexMatrix spin_half_boost_operator(double omega, SpinHalfAxes axes = SpinHalfAxes::Shared);

/// U = |p1><p1| (x) d1(theta) + |p2><p2| (x) d1(-theta).
ComplexMatrix spin_one_boost_operator(double theta);

DensityMatrix boost_spin_half(const DensityMatrix& rho, double omega,
                              SpinHalfAxes axes = SpinHalfAxes::Shared);
DensityMatrix boost_spin_one(const DensityMatrix& rho, double theta);

}  // namespace relent
