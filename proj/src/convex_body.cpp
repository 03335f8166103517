#include "finsler_iso/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fiso {

namespace {

constexpr double kMergeTol = 1e-12;

double max_abs_coord(std::span<const Vec2> pts) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max({m, std::abs(p.x), std::abs(p.y)});
  return m;
}

double signed_double_area(std::span<const Vec2> pts) {
  double s = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(pts[i], pts[(i + 1) % n]);
  return s;
}

// |x|^p + |y|^p computed as m * (1 + t^p)^(1/p), m = max(|x|, |y|).
double p_norm(Vec2 v, double p) {
  const double ax = std::abs(v.x);
  const double ay = std::abs(v.y);
  const double m = std::max(ax, ay);
  if (m == 0.0) return 0.0;
  const double t = std::min(ax, ay) / m;
  return m * std::pow(1.0 + std::pow(t, p), 1.0 / p);
}

std::vector<Vec2> drop_duplicates(std::vector<Vec2> pts, double tol) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    if (out.empty() || distance(out.back(), p) > tol) out.push_back(p);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
  return out;
}

}  // namespace

const char* to_string(BodyErrorCode code) {
  switch (code) {
    case BodyErrorCode::not_convex:
      return "NotConvex";
    case BodyErrorCode::origin_not_interior:
      return "OriginNotInterior";
    case BodyErrorCode::degenerate_input:
      return "DegenerateInput";
    case BodyErrorCode::invalid_parameter:
      return "InvalidParameter";
  }
  return "Unknown";
}

ConvexBody ConvexBody::polygon(std::vector<Vec2> vertices) {
  if (vertices.size() < 3) {
    throw BodyError(BodyErrorCode::degenerate_input, "polygon needs at least 3 vertices");
  }
  for (const auto& v : vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw BodyError(BodyErrorCode::degenerate_input, "non-finite vertex coordinate");
    }
  }
  const double scale = max_abs_coord(vertices);
  if (scale == 0.0) throw BodyError(BodyErrorCode::degenerate_input, "all vertices at origin");

  auto pts = drop_duplicates(std::move(vertices), kMergeTol * scale);
  if (pts.size() < 3) {
    throw BodyError(BodyErrorCode::degenerate_input, "fewer than 3 distinct vertices");
  }
  const double area2 = signed_double_area(pts);
  if (std::abs(area2) <= kMergeTol * scale * scale) {
    throw BodyError(BodyErrorCode::degenerate_input, "polygon has zero area");
  }
  if (area2 < 0.0) std::reverse(pts.begin(), pts.end());

  // Merge collinear vertices; reject reflex turns.
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 prev = pts[(i + n - 1) % n];
      const Vec2 cur = pts[i];
      const Vec2 next = pts[(i + 1) % n];
      const Vec2 e1 = cur - prev;
      const Vec2 e2 = next - cur;
      const double c = cross(e1, e2);
      const double tol = kMergeTol * norm(e1) * norm(e2);
      if (std::abs(c) <= tol) {
        if (dot(e1, e2) < 0.0) {
          throw BodyError(BodyErrorCode::not_convex, "polygon folds back on itself");
        }
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
      if (c < 0.0) throw BodyError(BodyErrorCode::not_convex, "reflex vertex in polygon");
    }
  }
  if (pts.size() < 3) {
    throw BodyError(BodyErrorCode::degenerate_input, "polygon collapses to a segment");
  }

  // All turns positive; a convex polygon winds exactly once.
  double turning = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e1 = pts[i] - pts[(i + n - 1) % n];
    const Vec2 e2 = pts[(i + 1) % n] - pts[i];
    turning += std::atan2(cross(e1, e2), dot(e1, e2));
  }
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-9) {
    throw BodyError(BodyErrorCode::not_convex, "polygon winds more than once");
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = pts[i];
    const Vec2 b = pts[(i + 1) % n];
    const double offset = cross(a, b) / norm(b - a);
    if (!(offset > kMergeTol * scale)) {
      throw BodyError(BodyErrorCode::origin_not_interior,
                      "origin is not strictly inside the polygon");
    }
  }

  auto first = std::min_element(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  std::rotate(pts.begin(), first, pts.end());

  ConvexBody body;
  body.kind_ = Kind::polygon;
  body.facets_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = pts[i];
    const Vec2 b = pts[(i + 1) % n];
    const Vec2 normal{b.y - a.y, a.x - b.x};
    body.facets_.push_back(normal / cross(a, b));
  }
  body.vertices_ = std::move(pts);
  return body;
}

ConvexBody ConvexBody::pball(double p, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw BodyError(BodyErrorCode::invalid_parameter, "p-ball scale must be positive");
  }
  if (!(p >= 1.0)) throw BodyError(BodyErrorCode::invalid_parameter, "p-ball needs p >= 1");
  const double r = scale;
  if (p == 1.0) return polygon({{r, 0.0}, {0.0, r}, {-r, 0.0}, {0.0, -r}});
  if (std::isinf(p)) return polygon({{r, r}, {-r, r}, {-r, -r}, {r, -r}});
  ConvexBody body;
  body.kind_ = Kind::pball;
  body.p_ = p;
  body.q_ = p / (p - 1.0);
  body.r_ = r;
  return body;
}

std::string ConvexBody::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind_ == Kind::pball) {
    os << "pball p=" << p_ << " q=" << q_ << " scale=" << r_;
  } else {
    os << "polygon[" << vertices_.size() << "]";
    for (const auto& v : vertices_) os << " (" << v.x << ", " << v.y << ")";
  }
  return os.str();
}

bool ConvexBody::operator==(const ConvexBody& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == Kind::pball) return p_ == other.p_ && r_ == other.r_;
  return vertices_ == other.vertices_;
}

double gauge(const ConvexBody& body, Vec2 v) {
  if (body.kind() == ConvexBody::Kind::pball) return p_norm(v, body.exponent()) / body.scale();
  double g = 0.0;
  for (const auto& w : body.facet_normals()) g = std::max(g, dot(v, w));
  return g;
}

double support(const ConvexBody& body, Vec2 v) {
  if (body.kind() == ConvexBody::Kind::pball) {
    return body.scale() * p_norm(v, body.conjugate_exponent());
  }
  double h = -std::numeric_limits<double>::infinity();
  for (const auto& a : body.vertices()) h = std::max(h, dot(v, a));
  return h;
}

Vec2 support_point(const ConvexBody& body, Vec2 d) {
  if (body.kind() == ConvexBody::Kind::pball) {
    const double q = body.conjugate_exponent();
    const double n = p_norm(d, q);
    if (n == 0.0) return {};
    auto component = [&](double c) {
      return std::copysign(std::pow(std::abs(c) / n, q - 1.0), c);
    };
    return Vec2{component(d.x), component(d.y)} * body.scale();
  }
  const auto verts = body.vertices();
  std::size_t best = 0;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    if (dot(verts[i], d) > dot(verts[best], d)) best = i;
  }
  return verts[best];
}

ConvexBody polar(const ConvexBody& body) {
  if (body.kind() == ConvexBody::Kind::pball) {
    return ConvexBody::pball(body.conjugate_exponent(), 1.0 / body.scale());
  }
  const auto f = body.facet_normals();
  return ConvexBody::polygon(std::vector<Vec2>(f.begin(), f.end()));
}

double euclid_area(const ConvexBody& body) {
  if (body.kind() == ConvexBody::Kind::pball) {
    const double p = body.exponent();
    const double g = std::tgamma(1.0 + 1.0 / p);
    return 4.0 * body.scale() * body.scale() * g * g / std::tgamma(1.0 + 2.0 / p);
  }
  return 0.5 * signed_double_area(body.vertices());
}

Extents x_extents(const ConvexBody& body) {
  if (body.kind() == ConvexBody::Kind::pball) return {body.scale(), body.scale()};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : body.vertices()) {
    lo = std::min(lo, v.x);
    hi = std::max(hi, v.x);
  }
  return {hi, -lo};
}

double radial(const ConvexBody& body, double phi) {
  return 1.0 / gauge(body, {std::cos(phi), std::sin(phi)});
}

bool is_centrally_symmetric(const ConvexBody& body, double tol) {
  if (body.kind() == ConvexBody::Kind::pball) return true;
  for (const auto& v : body.vertices()) {
    if (std::abs(gauge(body, -v) - 1.0) > tol) return false;
  }
  return true;
}

ConvexBody reflect(const ConvexBody& body) {
  if (body.kind() == ConvexBody::Kind::pball) return body;
  std::vector<Vec2> pts;
  for (const auto& v : body.vertices()) pts.push_back(-v);
  return ConvexBody::polygon(std::move(pts));
}

}  // namespace fiso
