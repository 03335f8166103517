#pragma once

#include "finsler_iso/convex_body.hpp"
#include "finsler_iso/vec2.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace fiso {

enum class PlaneErrorCode { nonpositive_y, not_closed, not_simple, nonpositive_area };

class PlaneError : public std::runtime_error {
 public:
  PlaneError(PlaneErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  PlaneErrorCode code() const noexcept { return code_; }

 private:
  PlaneErrorCode code_;
};

const char* to_string(PlaneErrorCode code);

/// Point of the upper half-plane y > 0, the group of affine maps
/// s -> y s + x of the line.
struct HyperbolicPoint {
  double x = 0.0;
  double y = 1.0;

  /// Throws PlaneError(nonpositive_y).
  static HyperbolicPoint checked(double x, double y);
  Vec2 vec() const { return {x, y}; }
};

/// Group product (x1, y1) . (x2, y2) = (x1 + x2 y1, y1 y2), i.e. the left
/// translation by g applied to p.
Vec2 left_translate(HyperbolicPoint g, Vec2 p);

/// Ordered points; a closed polyline repeats its first point at the end.
struct Polyline {
  std::vector<Vec2> points;
  bool closed = false;

  std::size_t segment_count() const { return points.empty() ? 0 : points.size() - 1; }
  Polyline reversed() const;
  Polyline translated(HyperbolicPoint g) const;
};

/// Left-invariant Finsler speed gauge(v) / y.
double finsler_speed(const ConvexBody& body, Vec2 at, Vec2 velocity);

/// Left-invariant length; exact for each straight segment. Depends on the
/// orientation when the body is not symmetric.
double curve_length(const ConvexBody& body, const Polyline& curve);

/// Signed area of dx dy / y^2 enclosed by a closed polyline; positive for
/// counterclockwise curves. Exact for each straight segment.
double green_area(const Polyline& curve);

/// True when no two non-adjacent segments meet (within tol) and adjacent
/// segments do not fold back over each other.
bool is_simple(const Polyline& curve, double tol = 1e-12);

/// Throws PlaneError when any point has y <= 0.
void require_upper_half_plane(const Polyline& curve);

}  // namespace fiso
