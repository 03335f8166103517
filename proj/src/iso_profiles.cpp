#include "finsler_iso/iso_profiles.hpp"

#include "finsler_iso/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fiso {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

struct Integrals {
  double L = 0.0;
  double F = 0.0;
  double F_alt = 0.0;
};

enum Want : unsigned { kLength = 1u, kArea = 2u, kAlt = 4u };

// Point of a smooth polar boundary at polar angle phi, with 1 - |x| / M
// computed without cancellation near the x-axis.
struct PolarPoint {
  Vec2 w;
  double rho = 0.0;
  double one_minus = 1.0;  // 1 - |w.x| / M
  double log_one_minus = 0.0;
};

PolarPoint smooth_polar_point(const ConvexBody& polar, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  PolarPoint pt;
  pt.rho = radial(polar, phi);
  pt.w = {pt.rho * c, pt.rho * s};
  if (c != 0.0) {
    const double t = std::abs(s / c);
    const double q = polar.exponent();
    const double log_tq = q * std::log(t);
    pt.one_minus = -std::expm1(-std::log1p(std::exp(log_tq)) / q);
    // Far below double range of t^q: 1 - |x| ~ t^q / q.
    pt.log_one_minus = log_tq < -30.0 ? log_tq - std::log(q) : std::log(pt.one_minus);
  }
  return pt;
}

void check_domain(const IsoContext& ctx, double lambda, Sign sign) {
  const double gap = sign_value(sign) * lambda - ctx.singular_end(sign);
  // The solvers probe the floor itself; allow for its rounding.
  if (!(gap >= ctx.min_gap(sign) * (1.0 - 1e-9)) || !std::isfinite(lambda)) {
    std::ostringstream os;
    os.precision(17);
    os << "LambdaOutOfDomain: lambda=" << lambda << " for sign " << to_string(sign)
       << " (needs " << (sign == Sign::plus ? "lambda >= " : "lambda <= ")
       << sign_value(sign) * (ctx.singular_end(sign) + ctx.min_gap(sign)) << ")";
    throw ProfileError(os.str());
  }
}

Integrals polygon_integrals(const IsoContext& ctx, double lambda, Sign sign, unsigned want) {
  const double s = sign_value(sign);
  const TrigTable& polar = ctx.polar_trig();
  const auto samples = polar.samples();
  const auto thetas = ctx.correspondence().piece_thetas();
  const std::size_t n = samples.size();
  Integrals out;
  for (std::size_t i = 0; i < n; ++i) {
    const double t0 = samples[i].theta;
    const double t1 = i + 1 < n ? samples[i + 1].theta : polar.period();
    const Vec2 wa = samples[i].point;
    const Vec2 wb = samples[(i + 1) % n].point;
    const Vec2 v = ctx.trig().eval(thetas[i]);
    const double width = t1 - t0;
    const double piece_L = width * num::log_ratio_slope(s * (lambda - wa.x), s * (lambda - wb.x));
    out.L += piece_L;
    out.F += v.x * piece_L;
    if (want & kAlt) {
      out.F_alt += s * v.y *
                   num::integrate_smooth(
                       [&](double u) {
                         const Vec2 w = wa + (wb - wa) * u;
                         const double d = lambda - w.x;
                         return w.y / (d * d);
                       },
                       0.0, 1.0, ctx.settings().quad_rel_tol) *
                   width;
    }
  }
  return out;
}

Integrals pball_integrals(const IsoContext& ctx, double lambda, Sign sign, unsigned want) {
  const double s = sign_value(sign);
  const double gap = s * lambda - ctx.singular_end(sign);
  const double m_plus = ctx.polar_extents().m_plus;
  const double tol = ctx.settings().quad_rel_tol;
  // Positive denominator s (lambda - cos°), accurate near the singular end.
  auto denom = [&](const PolarPoint& pt) {
    const bool near_side = sign == Sign::plus ? pt.w.x > 0.0 : pt.w.x < 0.0;
    if (near_side) return gap + m_plus * pt.one_minus;
    return s * (lambda - pt.w.x);
  };
  Integrals out;
  for (int panel = 0; panel < 4; ++panel) {
    const double a = panel * kHalfPi;
    const double b = a + kHalfPi;
    if (want & kLength) {
      out.L += num::integrate_singular(
          [&](double phi) {
            const PolarPoint pt = smooth_polar_point(ctx.polar_body(), phi);
            return pt.rho * pt.rho / denom(pt);
          },
          a, b, tol);
    }
    if (want & kArea) {
      out.F += num::integrate_singular(
          [&](double phi) {
            const PolarPoint pt = smooth_polar_point(ctx.polar_body(), phi);
            const Vec2 v = support_point(ctx.body(), pt.w);
            return v.x * pt.rho * pt.rho / denom(pt);
          },
          a, b, tol);
    }
    if (want & kAlt) {
      out.F_alt += s * num::integrate_singular(
                           [&](double phi) {
                             const PolarPoint pt = smooth_polar_point(ctx.polar_body(), phi);
                             const Vec2 v = support_point(ctx.body(), pt.w);
                             const double d = denom(pt);
                             return pt.w.y * v.y * pt.rho * pt.rho / (d * d);
                           },
                           a, b, tol);
    }
  }
  return out;
}

Integrals integrals(const IsoContext& ctx, double lambda, Sign sign, unsigned want) {
  check_domain(ctx, lambda, sign);
  if (ctx.body().is_polygon()) return polygon_integrals(ctx, lambda, sign, want);
  return pball_integrals(ctx, lambda, sign, want);
}

}  // namespace

const char* to_string(Sign s) { return s == Sign::plus ? "+" : "-"; }

IsoContext IsoContext::make(const ConvexBody& body, int resolution, ProfileSettings settings) {
  IsoContext ctx;
  ctx.body_ = body;
  ctx.polar_ = polar(body);
  ctx.trig_ = std::make_shared<const TrigTable>(TrigTable::build(ctx.body_, resolution));
  ctx.polar_trig_ = std::make_shared<const TrigTable>(TrigTable::build(ctx.polar_, resolution));
  ctx.corr_ = std::make_shared<const Correspondence>(ctx.trig_, ctx.polar_trig_);
  ctx.settings_ = settings;
  ctx.polar_ext_ = x_extents(ctx.polar_);
  ctx.polar_area_ = euclid_area(ctx.polar_);
  return ctx;
}

double IsoContext::singular_end(Sign s) const {
  return s == Sign::plus ? polar_ext_.m_plus : polar_ext_.m_minus;
}

double IsoContext::min_gap(Sign s) const {
  if (body_.is_polygon()) return settings_.eps_min;
  return std::max(settings_.eps_min, settings_.near_singular_rel * singular_end(s));
}

double ProfilePoint::alt_discrepancy() const {
  return std::abs(F - F_alt) / std::max(std::abs(F), std::numeric_limits<double>::min());
}

ProfilePoint profile(const IsoContext& ctx, double lambda, Sign sign) {
  const Integrals in = integrals(ctx, lambda, sign, kLength | kArea | kAlt);
  return {lambda, in.L, in.F, sign, in.F_alt};
}

double profile_length(const IsoContext& ctx, double lambda, Sign sign) {
  return integrals(ctx, lambda, sign, kLength).L;
}

double profile_area(const IsoContext& ctx, double lambda, Sign sign) {
  return integrals(ctx, lambda, sign, kArea).F;
}

double solve_lambda_for_area(const IsoContext& ctx, double area, Sign sign) {
  if (!(area > 0.0)) throw ProfileError("solve_lambda_for_area: area must be positive");
  const double s = sign_value(sign);
  const double end = ctx.singular_end(sign);
  const double guess = end + std::sqrt(ctx.polar_area() / area);
  try {
    const double mu = num::solve_decreasing(
        [&](double m) { return s * profile_area(ctx, s * m, sign); }, area, end, guess,
        ctx.min_gap(sign));
    return s * mu;
  } catch (const ProfileError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw ProfileError(std::string("AreaOutOfRange: ") + e.what());
  }
}

double lambda_of_length(const IsoContext& ctx, double length, Sign sign) {
  if (!(length > 0.0)) throw ProfileError("lambda_of_length: length must be positive");
  const double s = sign_value(sign);
  const double end = ctx.singular_end(sign);
  const double guess = end + 2.0 * ctx.polar_area() / length;
  try {
    const double mu = num::solve_decreasing(
        [&](double m) { return profile_length(ctx, s * m, sign); }, length, end, guess,
        ctx.min_gap(sign));
    return s * mu;
  } catch (const ProfileError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw ProfileError(std::string("LengthOutOfRange: ") + e.what());
  }
}

double area_for_length(const IsoContext& ctx, double length, Sign sign) {
  return profile_area(ctx, lambda_of_length(ctx, length, sign), sign);
}

double length_for_area(const IsoContext& ctx, double area, Sign sign) {
  return profile_length(ctx, solve_lambda_for_area(ctx, area, sign), sign);
}

double asymptote_a_plus(const IsoContext& ctx) {
  const double m = ctx.polar_extents().m_plus;
  if (ctx.polar_body().is_polygon()) {
    const TrigTable& polar = ctx.polar_trig();
    const auto samples = polar.samples();
    const std::size_t n = samples.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t0 = samples[i].theta;
      const double t1 = i + 1 < n ? samples[i + 1].theta : polar.period();
      const double ca = samples[i].point.x;
      const double cb = samples[(i + 1) % n].point.x;
      const double width = t1 - t0;
      if (std::abs(ca - m) <= 1e-12 * m && std::abs(cb - m) <= 1e-12 * m && width > 0.0) {
        return std::numeric_limits<double>::infinity();
      }
      if (std::abs(cb - ca) > 1e-7 * m) {
        // Antiderivative of G in c is (1/M) (1 - x) ln(1 - x) / x + const, x = c / M.
        const double diff =
            num::one_minus_x_log_ratio(cb / m) - num::one_minus_x_log_ratio(ca / m);
        total += width / (cb - ca) * diff / m;
      } else {
        total += width *
                 num::gauss_legendre(
                     [&](double u) { return num::neg_log_excess((ca + (cb - ca) * u) / m); }, 0.0,
                     1.0) /
                 (m * m);
      }
    }
    return total;
  }

  double total = 0.0;
  for (int panel = 0; panel < 4; ++panel) {
    const double a = panel * kHalfPi;
    total += num::integrate_singular(
        [&](double phi) {
          const PolarPoint pt = smooth_polar_point(ctx.polar_body(), phi);
          const double x = pt.w.x / m;
          double g = 0.0;
          if (std::abs(x) < 1e-2) {
            g = num::neg_log_excess(x);
          } else {
            const double log_one_minus_x = x > 0.0 ? pt.log_one_minus : std::log1p(-x);
            g = (-x - log_one_minus_x) / (x * x);
          }
          return g * pt.rho * pt.rho / (m * m);
        },
        a, a + kHalfPi, 1e-10);
  }
  return total;
}

}  // namespace fiso
