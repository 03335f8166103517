#include "finsler_iso/analytic_oracles.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fiso;
using namespace testing;

TEST_CASE("conjugate exponent conventions") {
  CHECK(oracle::conjugate(2.0) == doctest::Approx(2.0));
  CHECK(oracle::conjugate(3.0) == doctest::Approx(1.5));
  CHECK(std::isinf(oracle::conjugate(1.0)));
  CHECK(oracle::conjugate(std::numeric_limits<double>::infinity()) == 1.0);
}

TEST_CASE("p = 1, 2, inf closed forms at lambda = 2") {
  CHECK(oracle::pball_L_plus(1.0, 2.0) == doctest::Approx(8.0 / 3.0 + 2.0 * std::log(3.0)).epsilon(1e-14));
  CHECK(oracle::pball_F_plus(1.0, 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(oracle::pball_L_plus(INFINITY, 2.0) == doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-14));
  CHECK(oracle::pball_F_plus(INFINITY, 2.0) == doctest::Approx(2.0 * std::log(4.0 / 3.0)).epsilon(1e-14));
  // The general-p integral path reproduces the circle.
  CHECK(rel_err(oracle::pball_L_plus(2.0, 2.0), 2.0 * std::numbers::pi / std::sqrt(3.0)) < 1e-10);
  CHECK(rel_err(oracle::pball_F_plus(2.0, 2.0), disk_F(2.0)) < 1e-10);
}

TEST_CASE("general p matches direct quadrature of the x-integrals") {
  for (double p : {1.5, 3.0, 6.0}) {
    for (double l : {1.05, 1.5, 2.0, 5.0, 50.0}) {
      CAPTURE(p);
      CAPTURE(l);
      CHECK(rel_err(oracle::pball_L_plus(p, l), pball_L_ref(p, l)) < 1e-10);
      CHECK(rel_err(oracle::pball_F_plus(p, l), pball_F_ref(p, l)) < 1e-9);
    }
  }
}

TEST_CASE("a+ closed values") {
  CHECK(oracle::pball_a_plus(INFINITY) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(rel_err(oracle::pball_a_plus(2.0), 2.0 * std::numbers::pi) < 1e-12);
  CHECK(std::isinf(oracle::pball_a_plus(1.0)));
  for (double p : {1.5, 3.0}) CHECK(rel_err(oracle::pball_a_plus(p), pball_a_plus_ref(p)) < 1e-9);
}

TEST_CASE("oracles reject lambda <= 1") {
  CHECK_THROWS_AS(oracle::pball_L_plus(2.0, 1.0), oracle::OracleError);
  CHECK_THROWS_AS(oracle::pball_F_plus(INFINITY, 0.5), oracle::OracleError);
}

TEST_CASE("isoperimetric residuals") {
  CHECK(oracle::circle_hyperbola_residual(std::sqrt(1.0 + 4.0 * std::numbers::pi), 1.0) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(oracle::circle_hyperbola_residual(10.0, 1.0) == doctest::Approx(86.433629).epsilon(1e-8));
  CHECK(oracle::square_iso_residual(4.0 * std::acosh(std::exp(0.5)), 2.0) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(oracle::square_iso_residual(20.0, 2.0) > 0.0);
  const double A = 1.0;
  const double z = (A + 2.0) / 2.0;
  CHECK(std::abs(oracle::diamond_iso_residual(2.0 * (std::acosh(z) + std::sqrt(z * z - 1.0)), A)) <
        1e-14);
}

TEST_CASE("normalized residuals on the equality curves") {
  const double a = 2.0 * std::numbers::pi;
  const double A = 3.0;
  const double L = std::sqrt(A * A + 4.0 * std::numbers::pi * A);
  CHECK(std::abs(oracle::circle_normalized_residual(oracle::normalize(L, A, a))) < 1e-13);
  const double as = 4.0 * std::log(2.0);
  const double Ls = 4.0 * std::acosh(std::exp(A / 4.0));
  CHECK(std::abs(oracle::square_normalized_residual(oracle::normalize(Ls, A, as))) < 1e-12);
}
