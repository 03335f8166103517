#pragma once

#include <stdexcept>

namespace fiso::oracle {

class OracleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Conjugate exponent with q(1) = inf and q(inf) = 1.
double conjugate(double p);

/// Closed forms for the unit p-ball, p in [1, inf]. p = 1 and p = inf are
/// exact; other p integrate the one-dimensional forms after x = 1 - u^2.
/// Throw OracleError ("LambdaOutOfDomain") unless lambda > 1.
double pball_L_plus(double p, double lambda);
double pball_F_plus(double p, double lambda);

/// Asymptote intercept of the plus boundary curve; +inf for p = 1.
double pball_a_plus(double p);

/// L^2 - 4 pi A - A^2; zero on disk contours.
double circle_hyperbola_residual(double L, double A);

/// cosh(L/4) - exp(A/4); zero on square-body contours.
double square_iso_residual(double L, double A);

/// L/2 - arcosh(z) - sqrt(z^2 - 1), z = (A + 2)/2; zero on diamond-body
/// contours.
double diamond_iso_residual(double L, double A);

/// Normalized coordinates x = L / a+, y = (A + a+) / a+.
struct Normalized {
  double x = 0.0;
  double y = 0.0;
};
Normalized normalize(double L, double A, double a_plus);

/// y^2 - x^2 - 1 for the disk and 2^x + 2^-x - 2^y for the square.
double circle_normalized_residual(Normalized n);
double square_normalized_residual(Normalized n);

}  // namespace fiso::oracle
