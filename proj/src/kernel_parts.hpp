#pragma once

// Per-element pieces shared by the serial and OpenMP kernels.

#include "finsler_iso/kernels.hpp"

#include <vector>

namespace fiso::detail {

ProfileRow profile_row(const IsoContext& ctx, double lambda, Sign sign);

IsoCheck iso_check(const IsoContext& ctx, const Polyline& curve);

/// Uniform bucket grid over the segments of a polyline for nearest-segment
/// queries.
class SegmentGrid {
 public:
  explicit SegmentGrid(const Polyline& curve);

  /// Euclidean distance from p to the polyline.
  double distance_to(Vec2 p) const;

 private:
  std::size_t cell_index(long i, long j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i);
  }
  long clamp_x(double x) const;
  long clamp_y(double y) const;

  const Polyline& curve_;
  Vec2 origin_;
  double cell_ = 1.0;
  long nx_ = 1;
  long ny_ = 1;
  std::vector<std::size_t> start_;     // CSR offsets, one per cell plus one
  std::vector<std::size_t> segments_;  // segment ids
};

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

}  // namespace fiso::detail
