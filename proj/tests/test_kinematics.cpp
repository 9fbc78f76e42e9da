#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "relent/kinematics.hpp"

using namespace relent;

namespace {

BoostContext context(double beta, double e_over_m, const Vec3& e_hat, const Vec3& p_hat) {
  BoostContext ctx;
  ctx.beta = beta;
  ctx.mass = 1.0;
  ctx.momentum_mag = std::sqrt(e_over_m * e_over_m - 1.0);
  ctx.e_hat = e_hat;
  ctx.p_hat = p_hat;
  return ctx;
}

double unitarity_defect(const ComplexMatrix& u) {
  return max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.dim()));
}

}  // namespace

TEST_SUITE("kinematics") {
  TEST_CASE("boost context derived quantities and validation") {
    const BoostContext ctx = context(0.6, 2.0, {1, 0, 0}, {0, 0, 1});
    CHECK(ctx.gamma() == doctest::Approx(1.25));
    CHECK(ctx.energy_over_mass() == doctest::Approx(2.0));
    CHECK(std::cosh(ctx.boost_rapidity()) == doctest::Approx(ctx.gamma()));
    CHECK(std::cosh(ctx.momentum_rapidity()) == doctest::Approx(ctx.energy_over_mass()));

    BoostContext bad = ctx;
    bad.beta = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ctx;
    bad.mass = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ctx;
    bad.e_hat = {1.0, 1.0, 0.0};
    CHECK_THROWS_AS(wigner_angle(bad), std::invalid_argument);
    bad = ctx;
    bad.momentum_mag = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }

  TEST_CASE("no boost or no momentum gives no rotation") {
    const WignerRotation still = wigner_angle(context(0.0, 3.0, {1, 0, 0}, {0, 0, 1}));
    CHECK(still.omega == 0.0);
    CHECK_FALSE(still.axis_defined);
    const WignerRotation rest = wigner_angle(context(0.9, 1.0, {1, 0, 0}, {0, 0, 1}));
    CHECK(rest.omega == 0.0);
    CHECK_FALSE(rest.axis_defined);
  }

  TEST_CASE("half-angle quotients are normalised") {
    std::mt19937_64 rng(29);
    for (int k = 0; k < 200; ++k) {
      const double beta = 0.999 * oracle::unit_draw(rng);
      const double em = 1.0 + 20.0 * oracle::unit_draw(rng);
      const double c = 2.0 * oracle::unit_draw(rng) - 1.0;
      const BoostContext ctx = context(beta, em, {1, 0, 0}, {c, 0.0, std::sqrt(1.0 - c * c)});
      const double a = ctx.boost_rapidity(), d = ctx.momentum_rapidity();
      const double n2 = 0.5 + 0.5 * std::cosh(a) * std::cosh(d) + 0.5 * std::sinh(a) * std::sinh(d) * c;
      const double ch = (std::cosh(a / 2) * std::cosh(d / 2) + std::sinh(a / 2) * std::sinh(d / 2) * c);
      const double sh = std::sinh(a / 2) * std::sinh(d / 2) * std::sqrt(1.0 - c * c);
      CHECK((ch * ch + sh * sh) / n2 == doctest::Approx(1.0).epsilon(1e-10));
      const WignerRotation rot = wigner_angle(ctx);
      CHECK(rot.omega >= 0.0);
      CHECK(rot.omega < std::numbers::pi);
    }
  }

  TEST_CASE("perpendicular geometry beta = 0.6, E/m = 2 against the composition oracle") {
    const BoostContext ctx = context(0.6, 2.0, {1, 0, 0}, {0, 0, 1});
    const WignerRotation rot = wigner_angle(ctx);
    const oracle::Rotation ref = oracle::composition_rotation(0.6, 1.0, ctx.momentum_mag, ctx.e_hat, ctx.p_hat);
    CHECK(rot.omega == doctest::Approx(ref.omega).epsilon(1e-12));
    REQUIRE(rot.axis_defined);
    // n_hat follows e x p; the oracle returns the SO(3) rotation axis
    for (int i = 0; i < 3; ++i) CHECK(std::abs(rot.n_hat[i] + ref.axis[i]) < 1e-9);
    // e x p = x x z = -y
    CHECK(rot.n_hat[1] == doctest::Approx(-1.0));
  }

  TEST_CASE("Wigner angle matches the composition oracle over a (beta, E/m, geometry) grid") {
    for (double beta : {0.05, 0.2, 0.5, 0.8, 0.95, 0.999})
      for (double em : {1.01, 1.5, 3.0, 10.0, 100.0})
        for (double c : {-0.9, -0.3, 0.0, 0.4, 0.95}) {
          const Vec3 p_hat{c, 0.0, std::sqrt(1.0 - c * c)};
          for (const Vec3& e_hat : {Vec3{1, 0, 0}, Vec3{0, 0.6, 0.8}}) {
            const BoostContext ctx = context(beta, em, e_hat, p_hat);
            const WignerRotation rot = wigner_angle(ctx);
            const auto ref = oracle::composition_rotation(beta, 1.0, ctx.momentum_mag, e_hat, p_hat);
            // the oracle multiplies Lorentz matrices with entries up to gamma E/m
            const double scale = ctx.gamma() * em;
            const double tol = 1e-10 + 1e-12 * scale * scale;
            CHECK(std::abs(rot.omega - ref.omega) < tol);
            if (rot.omega > 1e-6)
              for (int i = 0; i < 3; ++i) CHECK(std::abs(rot.n_hat[i] + ref.axis[i]) < tol);
          }
        }
  }

  TEST_CASE("Wigner angle is continuous and grows monotonically with beta") {
    double prev = 0.0;
    for (int k = 0; k <= 999; ++k) {
      const double beta = 0.999 * k / 999.0;
      const double omega = wigner_angle(context(beta, 5.0, {1, 0, 0}, {0, 0, 1})).omega;
      CHECK(omega >= prev);
      CHECK(omega - prev < 2e-2);
      prev = omega;
    }
  }

  TEST_CASE("d_half") {
    CHECK(approx_equal(d_half({0.0, {0, 0, 0}, false}), ComplexMatrix::identity(2)));
    const ComplexMatrix flip = d_half({std::numbers::pi, {0, 1, 0}, true});
    CHECK(approx_equal(flip, ComplexMatrix{{0.0, 1.0}, {-1.0, 0.0}}));
    std::mt19937_64 rng(31);
    for (int k = 0; k < 100; ++k) {
      const double om = 2.0 * std::numbers::pi * (oracle::unit_draw(rng) - 0.5);
      const auto v = oracle::random_ket(rng, 3);
      Vec3 n{v[0].real(), v[1].real(), v[2].real()};
      const double len = norm(n);
      n = {n[0] / len, n[1] / len, n[2] / len};
      const ComplexMatrix d = d_half({om, n, true});
      CHECK(unitarity_defect(d) < 1e-12);
      const Complex det = d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0);
      CHECK(std::abs(std::abs(det) - 1.0) < 1e-12);
    }
  }

  TEST_CASE("d_one") {
    CHECK(approx_equal(d_one(0.0), ComplexMatrix::identity(3)));
    const double h = 1.0 / std::numbers::sqrt2;
    const Complex ih{0.0, h};
    const ComplexMatrix expected{{0.5, ih, -0.5}, {ih, 0.0, ih}, {-0.5, ih, 0.5}};
    CHECK(max_abs_diff(d_one(std::numbers::pi / 2), expected) < 1e-15);
    for (int k = -20; k <= 20; ++k) {
      const double t = 0.17 * k;
      CHECK(unitarity_defect(d_one(t)) < 1e-12);
      // d_one(-t) flips the sign of the sine entries only
      const ComplexMatrix plus = d_one(t), minus = d_one(-t);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          CHECK(std::abs(plus(i, j).real() - minus(i, j).real()) < 1e-15);
          CHECK(std::abs(plus(i, j).imag() + minus(i, j).imag()) < 1e-15);
        }
    }
  }

  TEST_CASE("d_one composes additively") {
    for (double a : {-1.3, -0.2, 0.0, 0.5, 2.0})
      for (double b : {-0.7, 0.3, 1.1, 3.0}) CHECK(max_abs_diff(d_one(a) * d_one(b), d_one(a + b)) < 1e-10);
  }

  TEST_CASE("Pauli-Lubanski eigenvalues") {
    SUBCASE("null b with p.b = 1") {
      const FourVector b{1.0, 0.0, 0.0, 1.0};
      const FourVector p{1.0, 0.0, 0.0, 0.0};
      const auto [plus, minus] = pauli_lubanski_eigenvalues(p, b, 1.0);
      CHECK(plus == doctest::Approx(0.5));
      CHECK(minus == doctest::Approx(-0.5));
    }
    SUBCASE("spatial b orthogonal to p with m|b| = 1") {
      const FourVector b{0.0, 0.0, 1.0, 0.0};
      const FourVector p{std::sqrt(2.0), 1.0, 0.0, 0.0};
      const auto [plus, minus] = pauli_lubanski_eigenvalues(p, b, 1.0);
      CHECK(plus == doctest::Approx(0.5));
      CHECK(minus == doctest::Approx(-0.5));
    }
    SUBCASE("b = 0") {
      const auto [plus, minus] = pauli_lubanski_eigenvalues({2.0, 1.0, 1.0, 1.0}, {0, 0, 0, 0}, 1.0);
      CHECK(plus == 0.0);
      CHECK(minus == 0.0);
    }
    SUBCASE("general spatial b uses (p.b)^2 + m^2 |b|^2") {
      const FourVector b{0.0, 1.0, 2.0, 0.0};
      const FourVector p{3.0, 0.5, 1.0, 2.0};
      const auto [plus, minus] = pauli_lubanski_eigenvalues(p, b, 2.0);
      CHECK(plus == doctest::Approx(0.5 * std::sqrt(2.5 * 2.5 + 4.0 * 5.0)));
      CHECK(minus == doctest::Approx(-plus));
    }
    SUBCASE("timelike b can make the radicand negative") {
      const FourVector b{2.0, 0.0, 0.0, 0.0};
      CHECK_THROWS_AS(pauli_lubanski_eigenvalues({1.0, 0.0, 0.0, 0.0}, b, 1.0), NumericalError);
    }
  }
}
