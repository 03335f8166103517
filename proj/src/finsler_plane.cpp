#include "finsler_iso/finsler_plane.hpp"

#include "finsler_iso/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fiso {

const char* to_string(PlaneErrorCode code) {
  switch (code) {
    case PlaneErrorCode::nonpositive_y:
      return "NonpositiveY";
    case PlaneErrorCode::not_closed:
      return "NotClosed";
    case PlaneErrorCode::not_simple:
      return "NotSimple";
    case PlaneErrorCode::nonpositive_area:
      return "NonpositiveArea";
  }
  return "Unknown";
}

HyperbolicPoint HyperbolicPoint::checked(double x, double y) {
  if (!(y > 0.0)) throw PlaneError(PlaneErrorCode::nonpositive_y, "point must have y > 0");
  return {x, y};
}

Vec2 left_translate(HyperbolicPoint g, Vec2 p) { return {g.x + g.y * p.x, g.y * p.y}; }

Polyline Polyline::reversed() const {
  Polyline out{std::vector<Vec2>(points.rbegin(), points.rend()), closed};
  return out;
}

Polyline Polyline::translated(HyperbolicPoint g) const {
  Polyline out{{}, closed};
  out.points.reserve(points.size());
  for (const auto& p : points) out.points.push_back(left_translate(g, p));
  return out;
}

void require_upper_half_plane(const Polyline& curve) {
  for (const auto& p : curve.points) {
    if (!(p.y > 0.0)) {
      throw PlaneError(PlaneErrorCode::nonpositive_y, "polyline leaves the upper half-plane");
    }
  }
}

double finsler_speed(const ConvexBody& body, Vec2 at, Vec2 velocity) {
  if (!(at.y > 0.0)) throw PlaneError(PlaneErrorCode::nonpositive_y, "speed needs y > 0");
  return gauge(body, velocity) / at.y;
}

double curve_length(const ConvexBody& body, const Polyline& curve) {
  require_upper_half_plane(curve);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    const Vec2 a = curve.points[i];
    const Vec2 b = curve.points[i + 1];
    total += gauge(body, b - a) * num::log_ratio_slope(a.y, b.y);
  }
  return total;
}

double green_area(const Polyline& curve) {
  if (!curve.closed || curve.points.size() < 2 || curve.points.front() != curve.points.back()) {
    throw PlaneError(PlaneErrorCode::not_closed, "area needs a closed polyline");
  }
  require_upper_half_plane(curve);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    const Vec2 a = curve.points[i];
    const Vec2 b = curve.points[i + 1];
    total += (b.x - a.x) * num::log_ratio_slope(a.y, b.y);
  }
  return total;
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c, double tol) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({norm(b - a), norm(c - a), 1e-300});
  if (std::abs(v) <= tol * scale) return 0;
  return v > 0.0 ? 1 : -1;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p, double tol) {
  return std::min(a.x, b.x) - tol <= p.x && p.x <= std::max(a.x, b.x) + tol &&
         std::min(a.y, b.y) - tol <= p.y && p.y <= std::max(a.y, b.y) + tol;
}

bool segments_meet(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol) {
  const int o1 = orientation(a, b, c, tol);
  const int o2 = orientation(a, b, d, tol);
  const int o3 = orientation(c, d, a, tol);
  const int o4 = orientation(c, d, b, tol);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(a, b, c, tol)) return true;
  if (o2 == 0 && on_segment(a, b, d, tol)) return true;
  if (o3 == 0 && on_segment(c, d, a, tol)) return true;
  if (o4 == 0 && on_segment(c, d, b, tol)) return true;
  return false;
}

}  // namespace

bool is_simple(const Polyline& curve, double tol) {
  const auto& pts = curve.points;
  const std::size_t m = curve.segment_count();
  if (m < 2) return true;

  // Adjacent segments may only share their joint, never overlap backwards.
  for (std::size_t i = 0; i + 1 < m || (curve.closed && i < m); ++i) {
    const std::size_t j = (i + 1) % m;
    const Vec2 e1 = pts[i + 1] - pts[i];
    const Vec2 e2 = pts[j + 1] - pts[j];
    if (std::abs(cross(e1, e2)) <= tol * norm(e1) * norm(e2) && dot(e1, e2) < 0.0) return false;
  }

  // Sweep over segments sorted by their left x; an active segment is dropped
  // once its right x falls behind the sweep position.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto min_x = [&](std::size_t s) { return std::min(pts[s].x, pts[s + 1].x); };
  auto max_x = [&](std::size_t s) { return std::max(pts[s].x, pts[s + 1].x); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return min_x(a) < min_x(b) || (min_x(a) == min_x(b) && a < b);
  });
  auto adjacent = [&](std::size_t a, std::size_t b) {
    const std::size_t d = a > b ? a - b : b - a;
    return d == 1 || (curve.closed && d == m - 1);
  };
  std::vector<std::size_t> active;
  for (const std::size_t s : order) {
    const double x = min_x(s);
    std::erase_if(active, [&](std::size_t a) { return max_x(a) < x - tol; });
    const double ylo = std::min(pts[s].y, pts[s + 1].y);
    const double yhi = std::max(pts[s].y, pts[s + 1].y);
    for (const std::size_t a : active) {
      if (adjacent(a, s)) continue;
      if (std::max(pts[a].y, pts[a + 1].y) < ylo - tol ||
          std::min(pts[a].y, pts[a + 1].y) > yhi + tol) {
        continue;
      }
      if (segments_meet(pts[a], pts[a + 1], pts[s], pts[s + 1], tol)) return false;
    }
    active.push_back(s);
  }
  return true;
}

}  // namespace fiso
