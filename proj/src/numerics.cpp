#include "finsler_iso/numerics.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fiso::num {

double log_ratio_slope(double a, double b) {
  const double u = (b - a) / a;
  if (std::abs(u) < 1e-8) {
    return (1.0 - u / 2.0 + u * u / 3.0) / a;
  }
  return std::log1p(u) / (b - a);
}

double one_minus_x_log_ratio(double x) {
  if (x == 1.0) return 0.0;
  if (x == 0.0) return -1.0;
  if (std::abs(x) < 1e-8) {
    return (1.0 - x) * (-1.0 - x / 2.0 - x * x / 3.0);
  }
  return (1.0 - x) * std::log1p(-x) / x;
}

double neg_log_excess(double x) {
  if (std::abs(x) < 1e-2) {
    // sum_{k>=0} x^k / (k + 2)
    double sum = 0.0;
    double power = 1.0;
    for (int k = 0; k < 14; ++k) {
      sum += power / (k + 2);
      power *= x;
    }
    return sum;
  }
  return (-x - std::log1p(-x)) / (x * x);
}

double integrate_smooth(const Integrand& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 18, rel_tol,
                                                                       &error);
}

double integrate_singular(const Integrand& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
  return integrator.integrate(f, a, b, rel_tol);
}

double gauss_legendre(const Integrand& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

double solve_decreasing(const Integrand& f, double target, double lower, double guess,
                        double floor_gap, double rel_tol) {
  if (!(target > 0.0)) throw std::invalid_argument("solve_decreasing: target must be positive");
  const double s_floor = std::log(floor_gap);
  auto g = [&](double s) { return f(lower + std::exp(s)) - target; };

  double s = std::log(std::max(guess - lower, floor_gap));
  double gs = g(s);
  double s_lo = s;
  double s_hi = s;
  double g_lo = gs;
  double g_hi = gs;
  if (gs > 0.0) {
    // f too large: move away from the singular end.
    while (g_hi > 0.0) {
      s_lo = s_hi;
      g_lo = g_hi;
      s_hi += 1.0;
      g_hi = g(s_hi);
      if (s_hi > 700.0) throw std::runtime_error("solve_decreasing: no upper bracket");
    }
  } else {
    while (g_lo < 0.0) {
      s_hi = s_lo;
      g_hi = g_lo;
      if (s_lo <= s_floor) {
        throw std::runtime_error("solve_decreasing: target " + std::to_string(target) +
                                 " not reached above the admissible floor");
      }
      s_lo = std::max(s_lo - 1.0, s_floor);
      g_lo = g(s_lo);
    }
  }
  if (g_lo == 0.0) return lower + std::exp(s_lo);
  if (g_hi == 0.0) return lower + std::exp(s_hi);

  std::uintmax_t max_iter = 300;
  auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3);
  auto [a, b] = boost::math::tools::toms748_solve(g, s_lo, s_hi, g_lo, g_hi, tol, max_iter);
  const double ga = g(a);
  const double gb = g(b);
  const double s_best = std::abs(ga) <= std::abs(gb) ? a : b;
  const double residual = std::min(std::abs(ga), std::abs(gb));
  if (residual > rel_tol * target) {
    throw std::runtime_error("solve_decreasing: residual " + std::to_string(residual) +
                             " above tolerance");
  }
  return lower + std::exp(s_best);
}

}  // namespace fiso::num
