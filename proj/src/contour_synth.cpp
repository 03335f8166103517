#include "finsler_iso/contour_synth.hpp"

#include "finsler_iso/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace fiso {

namespace {

// One linear piece of cos° between consecutive polar breakpoints, in
// unwrapped θ°.
struct LinearPiece {
  double theta_a = 0.0;
  double theta_b = 0.0;
  double c_a = 0.0;
  double c_b = 0.0;

  double cos_at(double theta) const {
    return c_a + (c_b - c_a) * (theta - theta_a) / (theta_b - theta_a);
  }
};

// Walks the polar pieces in the direction of motion, tracking the piece
// index instead of re-reducing θ° so that breakpoints are hit exactly.
class PieceCursor {
 public:
  PieceCursor(const TrigTable& polar, double theta, Sign sign) : polar_(polar), sign_(sign) {
    const double r = polar.reduce(theta, &turns_);
    index_ = polar.piece_of(r);
    if (sign == Sign::minus && r == polar.samples()[index_].theta) retreat();
  }

  LinearPiece piece() const {
    const auto samples = polar_.samples();
    const std::size_t m = samples.size();
    const double shift = static_cast<double>(turns_) * polar_.period();
    LinearPiece p;
    p.theta_a = samples[index_].theta + shift;
    p.theta_b = (index_ + 1 < m ? samples[index_ + 1].theta : polar_.period()) + shift;
    p.c_a = samples[index_].point.x;
    p.c_b = samples[(index_ + 1) % m].point.x;
    return p;
  }

  void step() {
    if (sign_ == Sign::plus) {
      if (++index_ == polar_.samples().size()) {
        index_ = 0;
        ++turns_;
      }
    } else {
      retreat();
    }
  }

 private:
  void retreat() {
    if (index_ == 0) {
      index_ = polar_.samples().size() - 1;
      --turns_;
    } else {
      --index_;
    }
  }

  const TrigTable& polar_;
  Sign sign_;
  std::size_t index_ = 0;
  long turns_ = 0;
};

template <class Rhs>
double rk4_step(const Rhs& f, double theta, double h) {
  const double k1 = f(theta);
  const double k2 = f(theta + 0.5 * h * k1);
  const double k3 = f(theta + 0.5 * h * k2);
  const double k4 = f(theta + h * k3);
  return theta + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

IsoConstants solve_constants(const IsoContext& ctx, HyperbolicPoint g0, double area, double alpha,
                             Sign sign) {
  if (!(area > 0.0)) throw ContourError("solve_constants: area must be positive");
  if (!(g0.y > 0.0)) throw PlaneError(PlaneErrorCode::nonpositive_y, "start point needs y > 0");
  IsoConstants k;
  k.sign = sign;
  k.alpha = ctx.polar_trig().reduce(alpha);
  k.lambda = solve_lambda_for_area(ctx, area, sign);
  const Vec2 w = ctx.polar_trig().eval(k.alpha);
  k.R = g0.y / (k.lambda - w.x);
  k.cx = g0.x - k.R * w.y;
  k.cy = k.R * k.lambda;
  k.T = profile_length(ctx, k.lambda, sign);
  return k;
}

Vec2 contour_point(const IsoContext& ctx, const IsoConstants& k, double theta_polar) {
  const Vec2 w = ctx.polar_trig().eval(theta_polar);
  return {k.R * w.y + k.cx, -k.R * w.x + k.cy};
}

Polyline Contour::polyline() const {
  Polyline out{{}, closed};
  out.points.reserve(samples.size());
  for (const auto& s : samples) {
    if (!out.points.empty()) {
      const Vec2 prev = out.points.back();
      if (distance(prev, s.p) <= 1e-13 * (1.0 + norm(prev))) continue;
    }
    out.points.push_back(s.p);
  }
  if (closed && !out.points.empty()) {
    if (out.points.size() > 1 &&
        distance(out.points.back(), out.points.front()) <= 1e-8 * (1.0 + norm(out.points.front()))) {
      out.points.back() = out.points.front();
    } else {
      out.points.push_back(out.points.front());
    }
  }
  return out;
}

Contour synthesize_contour(const IsoContext& ctx, const IsoConstants& k, int n) {
  if (n < 64) throw ContourError("synthesize_contour: needs at least 64 steps");
  const TrigTable& polar = ctx.polar_trig();
  const double s = sign_value(k.sign);
  const double h = k.T / n;
  const bool exact = polar.exactness() == TrigExactness::exact_piecewise_linear;

  Contour c;
  c.constants = k;
  c.closed = true;
  c.samples.reserve(static_cast<std::size_t>(n) + 1 + (exact ? 4 * polar.samples().size() : 0));
  c.samples.push_back({0.0, k.alpha, contour_point(ctx, k, k.alpha)});

  double theta = k.alpha;
  PieceCursor cursor(polar, theta, k.sign);
  for (int i = 1; i <= n; ++i) {
    double t = (i - 1) * h;
    if (!exact) {
      theta = rk4_step([&](double th) { return k.lambda - polar.eval(th).x; }, theta, h);
    } else {
      double remaining = h;
      while (remaining > 0.0) {
        const LinearPiece piece = cursor.piece();
        const double target = s > 0.0 ? piece.theta_b : piece.theta_a;
        const double c_target = s > 0.0 ? piece.c_b : piece.c_a;
        // Exact travel time to the breakpoint: the right side is linear in θ°.
        const double f0 = std::abs(k.lambda - piece.cos_at(theta));
        const double f1 = std::abs(k.lambda - c_target);
        const double tau = std::abs(target - theta) * num::log_ratio_slope(f0, f1);
        if (tau < remaining) {
          theta = target;
          t += tau;
          remaining -= tau;
          cursor.step();
          c.samples.push_back({t, theta, contour_point(ctx, k, theta)});
          continue;
        }
        theta = rk4_step([&](double th) { return k.lambda - piece.cos_at(th); }, theta, remaining);
        remaining = 0.0;
      }
    }
    const double ti = i == n ? k.T : i * h;
    c.samples.push_back({ti, theta, contour_point(ctx, k, theta)});
  }

  const double period = polar.period();
  c.closure_error = theta - (k.alpha + s * period);
  const double speed = k.lambda - polar.eval(theta).x;
  c.revolution_time = k.T - c.closure_error / speed;
  if (std::abs(c.closure_error) > 1e-7 * (1.0 + period)) {
    std::ostringstream os;
    os.precision(17);
    os << "StepTooCoarse: theta° misses one revolution by " << c.closure_error << " at n=" << n;
    throw ContourError(os.str());
  }
  return c;
}

Contour direct_contour(const IsoContext& ctx, const IsoConstants& k, int n) {
  if (n < 3) throw ContourError("direct_contour: needs at least 3 points");
  const TrigTable& polar = ctx.polar_trig();
  const double s = sign_value(k.sign);
  const double period = polar.period();
  // Offsets from alpha along the direction of travel. The table breakpoints
  // are added: polygon corners, and for p-balls the grid that is graded
  // toward the points of high curvature.
  std::vector<double> offsets;
  offsets.reserve(static_cast<std::size_t>(n) + polar.samples().size());
  for (int i = 0; i < n; ++i) offsets.push_back(period * i / n);
  for (const double b : polar.breakpoints()) {
    const double d = polar.reduce(s * (b - k.alpha));
    if (d > 0.0) offsets.push_back(d);
  }
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  Contour c;
  c.constants = k;
  c.closed = true;
  c.samples.reserve(offsets.size() + 1);
  for (const double d : offsets) {
    const double theta = k.alpha + s * d;
    c.samples.push_back({0.0, theta, contour_point(ctx, k, theta)});
  }
  c.samples.push_back({0.0, k.alpha + s * period, c.samples.front().p});
  c.revolution_time = k.T;
  return c;
}

Polyline densify(const IsoContext& ctx, const Contour& c, int factor) {
  if (factor < 1) throw ContourError("densify: factor must be positive");
  Polyline out{{}, c.closed};
  if (c.samples.empty()) return out;
  const TrigTable& polar = ctx.polar_trig();
  const double period = polar.period();
  const std::vector<double> breaks = polar.breakpoints();
  out.points.reserve(c.samples.size() * static_cast<std::size_t>(factor));
  std::vector<double> inner;
  for (std::size_t i = 0; i + 1 < c.samples.size(); ++i) {
    const double a = c.samples[i].theta_polar;
    const double b = c.samples[i + 1].theta_polar;
    out.points.push_back(c.samples[i].p);
    if (b == a) continue;
    inner.clear();
    for (int j = 1; j < factor; ++j) inner.push_back(a + (b - a) * j / factor);
    // Table breakpoints strictly inside the step.
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    long turns = 0;
    const double r = polar.reduce(lo, &turns);
    auto it = std::upper_bound(breaks.begin(), breaks.end(), r);
    for (int guard = 0; guard < static_cast<int>(breaks.size()); ++guard) {
      if (it == breaks.end()) {
        it = breaks.begin();
        ++turns;
      }
      const double theta = *it + static_cast<double>(turns) * period;
      if (!(theta < hi)) break;
      if (theta > lo) inner.push_back(theta);
      ++it;
    }
    if (b > a) {
      std::sort(inner.begin(), inner.end());
    } else {
      std::sort(inner.begin(), inner.end(), std::greater<>());
    }
    for (const double theta : inner) out.points.push_back(contour_point(ctx, c.constants, theta));
  }
  out.points.push_back(c.closed ? c.samples.front().p : c.samples.back().p);
  return out;
}

IsoReport check_isoperimetric(const IsoContext& ctx, const Polyline& curve) {
  if (!curve.closed || curve.points.size() < 4 ||
      distance(curve.points.front(), curve.points.back()) >
          1e-9 * (1.0 + norm(curve.points.front()))) {
    throw PlaneError(PlaneErrorCode::not_closed, "NotClosed: curve must end at its start");
  }
  Polyline ccw = curve;
  ccw.points.back() = ccw.points.front();
  require_upper_half_plane(ccw);
  if (!is_simple(ccw)) throw PlaneError(PlaneErrorCode::not_simple, "NotSimple: curve crosses itself");

  IsoReport r;
  double area = green_area(ccw);
  if (area < 0.0) {
    ccw = ccw.reversed();
    area = -area;
    r.reversed = true;
  }
  if (!(area > 0.0)) {
    throw PlaneError(PlaneErrorCode::nonpositive_area, "NonpositiveArea: curve encloses no area");
  }
  r.area = area;
  r.L_plus = curve_length(ctx.body(), ccw);
  r.L_minus = curve_length(ctx.body(), ccw.reversed());
  r.deficit_plus = r.L_plus - length_for_area(ctx, area, Sign::plus);
  r.deficit_minus = r.L_minus - length_for_area(ctx, area, Sign::minus);
  return r;
}

}  // namespace fiso
