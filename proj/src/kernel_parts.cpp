#include "kernel_parts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fiso::detail {

ProfileRow profile_row(const IsoContext& ctx, double lambda, Sign sign) {
  ProfileRow row;
  row.lambda = lambda;
  try {
    row.point = profile(ctx, lambda, sign);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

IsoCheck iso_check(const IsoContext& ctx, const Polyline& curve) {
  IsoCheck out;
  try {
    out.report = check_isoperimetric(ctx, curve);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 e = b - a;
  const double len2 = dot(e, e);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, e) / len2, 0.0, 1.0);
  return distance(p, a + e * t);
}

SegmentGrid::SegmentGrid(const Polyline& curve) : curve_(curve) {
  const auto& pts = curve.points;
  const std::size_t m = curve.segment_count();
  if (pts.empty()) return;
  Vec2 lo = pts.front();
  Vec2 hi = pts.front();
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    lo = {std::min(lo.x, pts[i].x), std::min(lo.y, pts[i].y)};
    hi = {std::max(hi.x, pts[i].x), std::max(hi.y, pts[i].y)};
    if (i + 1 < pts.size()) total += distance(pts[i], pts[i + 1]);
  }
  const double extent = std::max({hi.x - lo.x, hi.y - lo.y, 1e-300});
  // About two segments per cell along the curve, but never more than ~4m
  // cells in total.
  const double w = std::max(hi.x - lo.x, extent * 1e-6);
  const double h = std::max(hi.y - lo.y, extent * 1e-6);
  cell_ = m > 0 ? std::max(2.0 * total / static_cast<double>(m),
                           std::sqrt(w * h / (4.0 * static_cast<double>(m))))
                : extent;
  if (!(cell_ > 0.0)) cell_ = 1.0;
  origin_ = lo;
  nx_ = static_cast<long>((hi.x - lo.x) / cell_) + 1;
  ny_ = static_cast<long>((hi.y - lo.y) / cell_) + 1;

  // Two passes: count per cell, then fill.
  const std::size_t cells = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  std::vector<std::size_t> count(cells + 1, 0);
  auto for_cells = [&](std::size_t s, auto&& visit) {
    const Vec2 a = pts[s];
    const Vec2 b = pts[s + 1];
    for (long j = clamp_y(std::min(a.y, b.y)); j <= clamp_y(std::max(a.y, b.y)); ++j) {
      for (long i = clamp_x(std::min(a.x, b.x)); i <= clamp_x(std::max(a.x, b.x)); ++i) {
        visit(cell_index(i, j));
      }
    }
  };
  for (std::size_t s = 0; s < m; ++s) for_cells(s, [&](std::size_t c) { ++count[c + 1]; });
  for (std::size_t c = 0; c < cells; ++c) count[c + 1] += count[c];
  start_ = count;
  segments_.resize(count.back());
  std::vector<std::size_t> fill(count.begin(), count.end() - 1);
  for (std::size_t s = 0; s < m; ++s) for_cells(s, [&](std::size_t c) { segments_[fill[c]++] = s; });
}

long SegmentGrid::clamp_x(double x) const {
  return std::clamp(static_cast<long>(std::floor((x - origin_.x) / cell_)), 0L, nx_ - 1);
}

long SegmentGrid::clamp_y(double y) const {
  return std::clamp(static_cast<long>(std::floor((y - origin_.y) / cell_)), 0L, ny_ - 1);
}

double SegmentGrid::distance_to(Vec2 p) const {
  const auto& pts = curve_.points;
  if (pts.empty()) return std::numeric_limits<double>::infinity();
  if (pts.size() == 1) return distance(p, pts.front());
  const long ci = clamp_x(p.x);
  const long cj = clamp_y(p.y);
  double best = std::numeric_limits<double>::infinity();
  const long max_ring = std::max(nx_, ny_);
  for (long r = 0; r <= max_ring; ++r) {
    for (long j = cj - r; j <= cj + r; ++j) {
      if (j < 0 || j >= ny_) continue;
      const bool edge_row = j == cj - r || j == cj + r;
      for (long i = ci - r; i <= ci + r; i += (edge_row ? 1 : 2 * r)) {
        if (i >= 0 && i < nx_) {
          const std::size_t c = cell_index(i, j);
          for (std::size_t k = start_[c]; k < start_[c + 1]; ++k) {
            const std::size_t s = segments_[k];
            best = std::min(best, point_segment_distance(p, pts[s], pts[s + 1]));
          }
        }
        if (r == 0) break;
      }
    }
    // Cells outside ring r are at least r cells away from p.
    if (best <= static_cast<double>(r) * cell_) break;
  }
  return best;
}

}  // namespace fiso::detail
