#pragma once

// Relativistic kinematics (c = 1): Wigner angles of a pure boost acting on a
// massive particle and the spin-1/2 / spin-1 representation matrices.

#include <array>
#include <utility>

#include "relent/matcore.hpp"

namespace relent {

using Vec3 = std::array<double, 3>;
/// Contravariant four-vector (t, x, y, z); metric signature (+,-,-,-).
using FourVector = std::array<double, 4>;

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);

/// Observer boost and particle momentum in the rest frame.
struct BoostContext {
  double beta = 0.0;          // observer speed, [0, 1)
  double mass = 1.0;          // > 0
  double momentum_mag = 0.0;  // |p| >= 0
  Vec3 e_hat{1.0, 0.0, 0.0};  // boost direction
  Vec3 p_hat{0.0, 0.0, 1.0};  // momentum direction

  /// Throws std::invalid_argument when a field is out of range or a
  /// direction is not unit length within 1e-12.
  void validate() const;

  double gamma() const;            // cosh(alpha)
  double energy_over_mass() const; // cosh(delta)
  double boost_rapidity() const;   // alpha
  double momentum_rapidity() const;// delta
};

struct WignerRotation {
  double omega = 0.0;          // rotation angle, (-pi, pi]
  Vec3 n_hat{0.0, 0.0, 0.0};   // zero vector when the axis is undefined
  bool axis_defined = false;
};

/// Wigner angle and axis from the half-angle quotients
///   cos(W/2)   = [ch(a/2)ch(d/2) + sh(a/2)sh(d/2) e.p] / N
///   sin(W/2) n = [sh(a/2)sh(d/2) (e x p)] / N
/// with N = sqrt(1/2 + ch(a)ch(d)/2 + sh(a)sh(d)(e.p)/2).
WignerRotation wigner_angle(const BoostContext& ctx);

/// cos(W/2) I + i sin(W/2) (sigma . n).
ComplexMatrix d_half(const WignerRotation& rot);

/// Spin-1 Wigner matrix for a rotation by theta about x, in the basis
/// {|1>, |0>, |-1>}.
ComplexMatrix d_one(double theta);

double minkowski_dot(const FourVector& a, const FourVector& b);
double spatial_dot(const FourVector& a, const FourVector& b);

/// Eigenvalues (lambda_plus, lambda_minus) of the Pauli-Lubanski vector
/// projected on b.
///
/// Non-null b uses the spatial contraction p.b and the radicand
/// (p.b)^2 - m^2 (b.b), which is (p.b)^2 + m^2 |b|^2 for b = (0, b).
/// Null b (|b.b| < 1e-12) uses the Minkowski contraction and returns
/// +-|p.b|/2. Throws NumericalError on a negative radicand.
std::pair<double, double> pauli_lubanski_eigenvalues(const FourVector& p, const FourVector& b,
                                                     double mass);

}  // namespace relent
