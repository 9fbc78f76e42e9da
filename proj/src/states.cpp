#include "relent/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "relent/kinematics.hpp"

namespace relent {

namespace {

constexpr double kStateHermitian = 1e-12;
constexpr double kStateTrace = 1e-12;
constexpr double kStateMinEigenvalue = -1e-10;
constexpr double kWeightTolerance = 1e-12;

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m) {
  return u * m * u.adjoint();
}

ComplexMatrix momentum_projector(std::size_t which) {
  ComplexMatrix p(2);
  p(which, which) = 1.0;
  return p;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat, BipartiteDims dims)
    : mat_(std::move(mat)), dims_(dims) {
  if (mat_.dim() != dims_.total() || dims_.total() == 0) {
    throw InvalidStateError("DensityMatrix: dimension " + std::to_string(mat_.dim()) +
                            " does not match " + std::to_string(dims_.dA) + "x" +
                            std::to_string(dims_.dB));
  }
  if (!mat_.is_hermitian(kStateHermitian)) {
    throw InvalidStateError("DensityMatrix: matrix is not Hermitian");
  }
  const Complex tr = mat_.trace();
  if (std::abs(tr - 1.0) > kStateTrace) {
    throw InvalidStateError("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  const double min_eig = hermitian_eigenvalues(mat_).front();
  if (min_eig < kStateMinEigenvalue) {
    throw InvalidStateError("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
  }
}

void BellWeights::validate() const {
  double sum = 0.0;
  for (double p : as_array()) {
    if (!(p >= -kWeightTolerance && p <= 1.0 + kWeightTolerance)) {
      throw InvalidStateError("BellWeights: weight " + std::to_string(p) + " outside [0,1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kWeightTolerance) {
    throw InvalidStateError("BellWeights: weights sum to " + std::to_string(sum) + ", not 1");
  }
}

bool SpinOneWeights::is_physical() const {
  return std::isfinite(x) && std::isfinite(y) && 1.0 - x - y >= -kWeightTolerance &&
         1.0 + 5.0 * x - y >= -kWeightTolerance && 1.0 - x + 5.0 * y >= -kWeightTolerance;
}

void SpinOneWeights::validate() const {
  if (!is_physical()) {
    throw InvalidStateError("SpinOneWeights: (x, y) = (" + std::to_string(x) + ", " +
                            std::to_string(y) + ") is outside the physical triangle");
  }
}

std::array<std::vector<Complex>, 4> bell_states() {
  const double h = 1.0 / std::numbers::sqrt2;
  return {{
      {h, 0.0, 0.0, h},
      {h, 0.0, 0.0, -h},
      {0.0, h, h, 0.0},
      {0.0, -h, h, 0.0},
  }};
}

std::array<std::vector<Complex>, 2> spin_one_entangled_states() {
  const double h = 1.0 / std::numbers::sqrt2;
  // |p1,-1> is index 2, |p2,1> is index 3.
  return {{
      {0.0, 0.0, h, h, 0.0, 0.0},
      {0.0, 0.0, h, -h, 0.0, 0.0},
  }};
}

DensityMatrix rho_bd(const BellWeights& w) {
  w.validate();
  const auto psi = bell_states();
  const auto p = w.as_array();
  ComplexMatrix rho(4);
  for (std::size_t i = 0; i < 4; ++i) rho += p[i] * ComplexMatrix::projector(psi[i]);
  return DensityMatrix(std::move(rho), kSpinHalfDims);
}

DensityMatrix rho_spin1(const SpinOneWeights& w) {
  w.validate();
  const auto psi = spin_one_entangled_states();
  ComplexMatrix rho = ((1.0 - w.x - w.y) / 6.0) * ComplexMatrix::identity(6);
  rho += w.x * ComplexMatrix::projector(psi[0]);
  rho += w.y * ComplexMatrix::projector(psi[1]);
  return DensityMatrix(std::move(rho), kSpinOneDims);
}

ComplexMatrix spin_half_boost_operator(double omega, SpinHalfAxes axes) {
  const WignerRotation plus{omega, {0.0, 1.0, 0.0}, true};
  const WignerRotation minus{omega, {0.0, -1.0, 0.0}, true};
  const ComplexMatrix& second = axes == SpinHalfAxes::Shared ? d_half(plus) : d_half(minus);
  return kron(momentum_projector(0), d_half(plus)) + kron(momentum_projector(1), second);
}

ComplexMatrix spin_one_boost_operator(double theta) {
  return kron(momentum_projector(0), d_one(theta)) + kron(momentum_projector(1), d_one(-theta));
}

DensityMatrix boost_spin_half(const DensityMatrix& rho, double omega, SpinHalfAxes axes) {
  if (rho.dims() != kSpinHalfDims) throw DimensionError("boost_spin_half: expected a 2x2 state");
  return DensityMatrix(conjugate_by(spin_half_boost_operator(omega, axes), rho.mat()), rho.dims());
}

DensityMatrix boost_spin_one(const DensityMatrix& rho, double theta) {
  if (rho.dims() != kSpinOneDims) throw DimensionError("boost_spin_one: expected a 2x3 state");
  return DensityMatrix(conjugate_by(spin_one_boost_operator(theta), rho.mat()), rho.dims());
}

}  // namespace relent
