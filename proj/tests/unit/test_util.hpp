#pragma once

#include "finsler_iso/convex_body.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace testing {

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline fiso::ConvexBody pentagon() {
  return fiso::ConvexBody::polygon({{1.3, 0.2}, {0.4, 1.1}, {-0.9, 0.7}, {-0.8, -0.6}, {0.5, -1.0}});
}

// Closed forms for the unit p-balls, typed in from their definitions.
inline double disk_L(double l) { return 2.0 * std::numbers::pi / std::sqrt(l * l - 1.0); }
inline double disk_F(double l) { return 2.0 * std::numbers::pi * (l / std::sqrt(l * l - 1.0) - 1.0); }
inline double diamond_L(double l) {
  return 4.0 * l / (l * l - 1.0) + 2.0 * std::log((l + 1.0) / (l - 1.0));
}
inline double diamond_F(double l) { return 4.0 / (l * l - 1.0); }
inline double square_L(double l) { return 2.0 * std::log((l + 1.0) / (l - 1.0)); }
inline double square_F(double l) { return 2.0 * std::log(l * l / (l * l - 1.0)); }

// 4 lambda int_0^1 dx / ((lambda^2 - x^2) (1 - x^q)^(1/p)) and the matching
// area integral, by plain tanh-sinh on the original variable. Near x = 1 the
// quadrature hands over xc = 1 - x.
inline double pball_L_ref(double p, double l) {
  const double q = p / (p - 1.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  return 4.0 * l * ts.integrate([&](double x, double xc) {
    const double gap = xc > 0.0 && xc < 0.5 ? -std::expm1(q * std::log1p(-xc)) : 1.0 - std::pow(x, q);
    return 1.0 / ((l * l - x * x) * std::pow(gap, 1.0 / p));
  }, 0.0, 1.0);
}
inline double pball_F_ref(double p, double l) {
  const double q = p / (p - 1.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  return 4.0 * ts.integrate([&](double x, double xc) {
    const double gap = xc > 0.0 && xc < 0.5 ? -std::expm1(q * std::log1p(-xc)) : 1.0 - std::pow(x, q);
    return std::pow(x, q) / ((l * l - x * x) * std::pow(gap, 1.0 / p));
  }, 0.0, 1.0);
}
inline double pball_a_plus_ref(double p) {
  const double q = p / (p - 1.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  return 4.0 * ts.integrate([&](double x, double xc) {
    const double gap = xc > 0.0 && xc < 0.5 ? -std::expm1(q * std::log1p(-xc)) : 1.0 - std::pow(x, q);
    const double one_minus_x2 = xc > 0.0 && xc < 0.5 ? xc * (1.0 + x) : 1.0 - x * x;
    return std::pow(gap, 1.0 / q) / one_minus_x2;
  }, 0.0, 1.0);
}

}  // namespace testing
