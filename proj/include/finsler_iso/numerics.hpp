#pragma once

#include <functional>

namespace fiso::num {

/// ln(b/a)/(b - a) for a, b > 0, i.e. the mean of 1/s over the segment [a, b].
/// Switches to a series when |b - a| / a < 1e-8.
double log_ratio_slope(double a, double b);

/// (1 - x) * ln(1 - x) / x, continuous on (-inf, 1] with value -1 at x = 0
/// and 0 at x = 1.
double one_minus_x_log_ratio(double x);

/// (-x - ln(1 - x)) / x^2 for x < 1, continuous at x = 0 (value 1/2).
double neg_log_excess(double x);

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (31 point) on [a, b]. The integrand must be smooth
/// inside the interval; endpoints may carry mild non-smoothness.
double integrate_smooth(const Integrand& f, double a, double b, double rel_tol = 1e-12);

/// Double-exponential (tanh-sinh) quadrature on [a, b]; tolerates integrable
/// endpoint singularities. The integrand is never evaluated at a or b.
double integrate_singular(const Integrand& f, double a, double b, double rel_tol = 1e-12);

/// Fixed 20-point Gauss-Legendre rule on [a, b].
double gauss_legendre(const Integrand& f, double a, double b);

/// Solves f(x) = target for a strictly decreasing f on (lower, +inf) where
/// f -> +inf at lower and f -> 0 at +inf. The search runs in the variable
/// ln(x - lower); `guess` seeds the bracket. `floor_gap` is the smallest
/// admissible x - lower. Returns x with |f(x) - target| <= rel_tol * target,
/// or throws std::runtime_error when no such point is reached.
double solve_decreasing(const Integrand& f, double target, double lower, double guess,
                        double floor_gap, double rel_tol = 1e-9);

}  // namespace fiso::num
