#pragma once

#include "finsler_iso/vec2.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fiso {

enum class BodyErrorCode { not_convex, origin_not_interior, degenerate_input, invalid_parameter };

class BodyError : public std::runtime_error {
 public:
  BodyError(BodyErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  BodyErrorCode code() const noexcept { return code_; }

 private:
  BodyErrorCode code_;
};

const char* to_string(BodyErrorCode code);

/// Max and minus-min of the first coordinate over a body.
struct Extents {
  double m_plus = 0.0;
  double m_minus = 0.0;
};

/// Compact convex planar body with the origin strictly inside.
///
/// Two representations are kept: a counterclockwise polygon, canonicalized so
/// that equal bodies compare equal, and the smooth p-ball
/// {|x/r|^p + |y/r|^p <= 1} for 1 < p < inf. The limiting exponents p = 1 and
/// p = inf are stored exactly as the diamond and the square. Values are
/// immutable after construction.
class ConvexBody {
 public:
  enum class Kind { polygon, pball };

  /// Accepts any vertex order and start; merges duplicate and collinear
  /// vertices. Throws BodyError.
  static ConvexBody polygon(std::vector<Vec2> vertices);

  /// p in [1, inf], scale > 0. p = 1 and p = inf give polygons.
  static ConvexBody pball(double p, double scale = 1.0);

  Kind kind() const noexcept { return kind_; }
  bool is_polygon() const noexcept { return kind_ == Kind::polygon; }

  /// Polygon vertices, counterclockwise, lexicographically least first.
  std::span<const Vec2> vertices() const noexcept { return vertices_; }

  /// Vertices of the polar polygon, one per edge: edge k runs from vertex k to
  /// vertex k + 1 and maps to n_k / c_k for its outward line <n_k, x> = c_k.
  std::span<const Vec2> facet_normals() const noexcept { return facets_; }

  double exponent() const noexcept { return p_; }
  double conjugate_exponent() const noexcept { return q_; }
  double scale() const noexcept { return r_; }

  std::string describe() const;

  bool operator==(const ConvexBody& other) const;

 private:
  ConvexBody() = default;

  Kind kind_ = Kind::polygon;
  std::vector<Vec2> vertices_;
  std::vector<Vec2> facets_;
  double p_ = 0.0;
  double q_ = 0.0;
  double r_ = 1.0;
};

/// Minkowski functional. Positively homogeneous; equals 1 on the boundary.
double gauge(const ConvexBody& body, Vec2 v);

/// max over the body of <x, v>.
double support(const ConvexBody& body, Vec2 v);

/// A maximizer of <x, d> over the body. Unique for p-balls and for
/// directions that are not edge normals of a polygon; otherwise the first
/// maximizing vertex.
Vec2 support_point(const ConvexBody& body, Vec2 d);

/// The polar body {w : <w, v> <= 1 for all v in body}.
ConvexBody polar(const ConvexBody& body);

double euclid_area(const ConvexBody& body);

Extents x_extents(const ConvexBody& body);

/// Distance from the origin to the boundary along the direction of angle phi.
double radial(const ConvexBody& body, double phi);

bool is_centrally_symmetric(const ConvexBody& body, double tol = 1e-12);

/// The body reflected through the origin.
ConvexBody reflect(const ConvexBody& body);

}  // namespace fiso
