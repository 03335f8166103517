#include "finsler_iso/analytic_oracles.hpp"

#include "finsler_iso/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fiso::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_lambda(double lambda) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) {
    throw OracleError("LambdaOutOfDomain: p-ball profiles need lambda > 1");
  }
}

void require_p(double p) {
  if (!(p >= 1.0)) throw OracleError("p-ball exponent must be >= 1");
}

// (1 - x^q) / u^2 at x = 1 - u^2, without cancellation near u = 0; tends to q.
double scaled_gap(double u, double q) {
  const double u2 = u * u;
  if (u2 < 1e-300) return q;
  return -std::expm1(q * std::log1p(-u2)) / u2;
}

// int_0^1 x^k dx / ((lambda^2 - x^2) (1 - x^q)^(1/p)) with k = 0 or q.
double profile_integral(double p, double lambda, bool weighted) {
  const double q = conjugate(p);
  return num::integrate_singular(
      [=](double u) {
        const double x = 1.0 - u * u;
        const double w = weighted ? std::pow(x, q) : 1.0;
        // 2u (1 - x^q)^(-1/p) = 2 u^(1 - 2/p) gap^(-1/p).
        return 2.0 * std::pow(u, 1.0 - 2.0 / p) * w /
               ((lambda * lambda - x * x) * std::pow(scaled_gap(u, q), 1.0 / p));
      },
      0.0, 1.0, 1e-13);
}

}  // namespace

double conjugate(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double pball_L_plus(double p, double lambda) {
  require_p(p);
  require_lambda(lambda);
  const double l2 = lambda * lambda;
  if (p == 1.0) return 4.0 * lambda / (l2 - 1.0) + 2.0 * std::log((lambda + 1.0) / (lambda - 1.0));
  if (std::isinf(p)) return 2.0 * std::log((lambda + 1.0) / (lambda - 1.0));
  return 4.0 * lambda * profile_integral(p, lambda, false);
}

double pball_F_plus(double p, double lambda) {
  require_p(p);
  require_lambda(lambda);
  const double l2 = lambda * lambda;
  if (p == 1.0) return 4.0 / (l2 - 1.0);
  if (std::isinf(p)) return 2.0 * std::log(l2 / (l2 - 1.0));
  return 4.0 * profile_integral(p, lambda, true);
}

double pball_a_plus(double p) {
  require_p(p);
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 4.0 * std::numbers::ln2;
  const double q = conjugate(p);
  return 4.0 * num::integrate_singular(
                   [=](double u) {
                     // (1 - x^q)^(1/q) / (1 - x^2) dx with 1 - x^2 = u^2 (2 - u^2).
                     return 2.0 * std::pow(u, 2.0 / q - 1.0) * std::pow(scaled_gap(u, q), 1.0 / q) /
                            (2.0 - u * u);
                   },
                   0.0, 1.0, 1e-13);
}

double circle_hyperbola_residual(double L, double A) {
  return L * L - 4.0 * std::numbers::pi * A - A * A;
}

double square_iso_residual(double L, double A) { return std::cosh(L / 4.0) - std::exp(A / 4.0); }

double diamond_iso_residual(double L, double A) {
  const double z = (A + 2.0) / 2.0;
  return L / 2.0 - std::acosh(z) - std::sqrt(z * z - 1.0);
}

Normalized normalize(double L, double A, double a_plus) { return {L / a_plus, (A + a_plus) / a_plus}; }

double circle_normalized_residual(Normalized n) { return n.y * n.y - n.x * n.x - 1.0; }

double square_normalized_residual(Normalized n) {
  return std::exp2(n.x) + std::exp2(-n.x) - std::exp2(n.y);
}

}  // namespace fiso::oracle
