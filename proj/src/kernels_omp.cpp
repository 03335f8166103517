#include "finsler_iso/kernels.hpp"

#include "kernel_parts.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace fiso {

int thread_limit() {
  const int available = omp_get_max_threads();
  if (const char* env = std::getenv("FINSLER_ISO_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) return std::min(cap, available);
    } catch (const std::exception&) {
      // ignored: fall back to the OpenMP default
    }
  }
  return available;
}

std::vector<ProfileRow> profile_table(const IsoContext& ctx, std::span<const double> lambdas,
                                      Sign sign) {
  const long n = static_cast<long>(lambdas.size());
  std::vector<ProfileRow> rows(lambdas.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
  for (long i = 0; i < n; ++i) rows[i] = detail::profile_row(ctx, lambdas[i], sign);
  return rows;
}

double max_identity_residual(const Correspondence& corr, std::span<const double> grid) {
  const long n = static_cast<long>(grid.size());
  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) num_threads(thread_limit())
  for (long i = 0; i < n; ++i) worst = std::max(worst, corr.identity_residual(grid[i]));
  return worst;
}

double check_derivative_relation(const Correspondence& corr, std::span<const double> grid,
                                 double h) {
  const long n = static_cast<long>(grid.size());
  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) num_threads(thread_limit())
  for (long i = 0; i < n; ++i) worst = std::max(worst, derivative_residual(corr, grid[i], h));
  return worst;
}

double hausdorff_distance(const Polyline& a, const Polyline& b) {
  const detail::SegmentGrid ga(a);
  const detail::SegmentGrid gb(b);
  const long na = static_cast<long>(a.points.size());
  const long nb = static_cast<long>(b.points.size());
  double worst = 0.0;
#pragma omp parallel num_threads(thread_limit())
  {
#pragma omp for reduction(max : worst) nowait
    for (long i = 0; i < na; ++i) worst = std::max(worst, gb.distance_to(a.points[i]));
#pragma omp for reduction(max : worst)
    for (long i = 0; i < nb; ++i) worst = std::max(worst, ga.distance_to(b.points[i]));
  }
  return worst;
}

std::vector<IsoCheck> check_isoperimetric_batch(const IsoContext& ctx,
                                                std::span<const Polyline> curves) {
  const long n = static_cast<long>(curves.size());
  std::vector<IsoCheck> out(curves.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
  for (long i = 0; i < n; ++i) out[i] = detail::iso_check(ctx, curves[i]);
  return out;
}

}  // namespace fiso
