#include "relent/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace relent {

namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kNullTolerance = 1e-12;

void require_unit(const Vec3& v, const char* name) {
  if (std::abs(norm(v) - 1.0) > kUnitTolerance) {
    throw std::invalid_argument(std::string("BoostContext: ") + name + " is not a unit vector");
  }
}

}  // namespace

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

void BoostContext::validate() const {
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("BoostContext: beta must lie in [0, 1)");
  if (!(mass > 0.0)) throw std::invalid_argument("BoostContext: mass must be positive");
  if (!(momentum_mag >= 0.0) || !std::isfinite(momentum_mag)) {
    throw std::invalid_argument("BoostContext: momentum magnitude must be finite and >= 0");
  }
  require_unit(e_hat, "e_hat");
  require_unit(p_hat, "p_hat");
}

double BoostContext::gamma() const { return 1.0 / std::sqrt(1.0 - beta * beta); }

double BoostContext::energy_over_mass() const {
  return std::sqrt(momentum_mag * momentum_mag + mass * mass) / mass;
}

double BoostContext::boost_rapidity() const { return std::atanh(beta); }

double BoostContext::momentum_rapidity() const { return std::asinh(momentum_mag / mass); }

WignerRotation wigner_angle(const BoostContext& ctx) {
  ctx.validate();
  const double alpha = ctx.boost_rapidity();
  const double delta = ctx.momentum_rapidity();
  const double ep = dot(ctx.e_hat, ctx.p_hat);
  const Vec3 exp_axis = cross(ctx.e_hat, ctx.p_hat);

  const double denom_sq = 0.5 + 0.5 * std::cosh(alpha) * std::cosh(delta) +
                          0.5 * std::sinh(alpha) * std::sinh(delta) * ep;
  if (!(denom_sq > 0.0)) {
    throw NumericalError("wigner_angle: degenerate denominator");
  }
  const double denom = std::sqrt(denom_sq);
  const double cos_half = (std::cosh(alpha / 2) * std::cosh(delta / 2) +
                           std::sinh(alpha / 2) * std::sinh(delta / 2) * ep) /
                          denom;
  const double sh = std::sinh(alpha / 2) * std::sinh(delta / 2) / denom;
  const Vec3 sin_half_n{sh * exp_axis[0], sh * exp_axis[1], sh * exp_axis[2]};
  const double sin_half = norm(sin_half_n);

  WignerRotation rot;
  rot.omega = 2.0 * std::atan2(sin_half, cos_half);
  if (sin_half > 0.0) {
    rot.n_hat = {sin_half_n[0] / sin_half, sin_half_n[1] / sin_half, sin_half_n[2] / sin_half};
    rot.axis_defined = true;
  }
  return rot;
}

ComplexMatrix d_half(const WignerRotation& rot) {
  const double c = std::cos(rot.omega / 2);
  const double s = std::sin(rot.omega / 2);
  const auto& n = rot.n_hat;
  const Complex i{0.0, 1.0};
  // sigma.n = [[nz, nx - i ny], [nx + i ny, -nz]]
  return ComplexMatrix{
      {c + i * s * n[2], i * s * Complex(n[0], -n[1])},
      {i * s * Complex(n[0], n[1]), c - i * s * n[2]},
  };
}

ComplexMatrix d_one(double theta) {
  const double c = std::cos(theta);
  const Complex is{0.0, std::sin(theta) / std::numbers::sqrt2};
  return ComplexMatrix{
      {(c + 1) / 2, is, (c - 1) / 2},
      {is, c, is},
      {(c - 1) / 2, is, (c + 1) / 2},
  };
}

double minkowski_dot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

double spatial_dot(const FourVector& a, const FourVector& b) {
  return a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

std::pair<double, double> pauli_lubanski_eigenvalues(const FourVector& p, const FourVector& b,
                                                     double mass) {
  if (mass < 0.0) throw std::invalid_argument("pauli_lubanski_eigenvalues: negative mass");
  const double bb = minkowski_dot(b, b);
  if (std::abs(bb) < kNullTolerance) {
    const double half = 0.5 * std::abs(minkowski_dot(p, b));
    return {half, -half};
  }
  const double pb = spatial_dot(p, b);
  const double radicand = pb * pb - mass * mass * bb;
  if (radicand < 0.0) {
    throw NumericalError("pauli_lubanski_eigenvalues: negative radicand " +
                         std::to_string(radicand) + " (timelike projection vector?)");
  }
  const double half = 0.5 * std::sqrt(radicand);
  return {half, -half};
}

}  // namespace relent
