#include "finsler_iso/kernels.hpp"

#include "kernel_parts.hpp"

#include <algorithm>

namespace fiso::serial {

std::vector<ProfileRow> profile_table(const IsoContext& ctx, std::span<const double> lambdas,
                                      Sign sign) {
  std::vector<ProfileRow> rows;
  rows.reserve(lambdas.size());
  for (const double lambda : lambdas) rows.push_back(detail::profile_row(ctx, lambda, sign));
  return rows;
}

double max_identity_residual(const Correspondence& corr, std::span<const double> grid) {
  double worst = 0.0;
  for (const double t : grid) worst = std::max(worst, corr.identity_residual(t));
  return worst;
}

double check_derivative_relation(const Correspondence& corr, std::span<const double> grid,
                                 double h) {
  double worst = 0.0;
  for (const double t : grid) worst = std::max(worst, derivative_residual(corr, t, h));
  return worst;
}

double hausdorff_distance(const Polyline& a, const Polyline& b) {
  const detail::SegmentGrid ga(a);
  const detail::SegmentGrid gb(b);
  double worst = 0.0;
  for (const Vec2 p : a.points) worst = std::max(worst, gb.distance_to(p));
  for (const Vec2 p : b.points) worst = std::max(worst, ga.distance_to(p));
  return worst;
}

std::vector<IsoCheck> check_isoperimetric_batch(const IsoContext& ctx,
                                                std::span<const Polyline> curves) {
  std::vector<IsoCheck> out;
  out.reserve(curves.size());
  for (const auto& c : curves) out.push_back(detail::iso_check(ctx, c));
  return out;
}

}  // namespace fiso::serial
