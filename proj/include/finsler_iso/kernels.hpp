#pragma once

// Data-parallel sweeps. The functions in namespace fiso use OpenMP, with the
// thread count capped by FINSLER_ISO_THREADS; fiso::serial holds the
// single-threaded reference versions. Both produce identical results: every
// row is written to its own slot and the only reductions are max.
//
// Parallel counterparts declared elsewhere: profile_table (iso_profiles.hpp),
// check_derivative_relation (convex_trig.hpp), hausdorff_distance
// (contour_synth.hpp).

#include "finsler_iso/contour_synth.hpp"
#include "finsler_iso/convex_trig.hpp"
#include "finsler_iso/iso_profiles.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fiso {

/// Threads used by the parallel kernels: FINSLER_ISO_THREADS when set to a
/// positive integer (never more than OpenMP offers), otherwise OpenMP's
/// default.
int thread_limit();

/// Max of identity_residual over the grid.
double max_identity_residual(const Correspondence& corr, std::span<const double> grid);

struct IsoCheck {
  std::optional<IsoReport> report;
  std::string error;
};

/// check_isoperimetric over a batch of curves.
std::vector<IsoCheck> check_isoperimetric_batch(const IsoContext& ctx,
                                                std::span<const Polyline> curves);

namespace serial {

std::vector<ProfileRow> profile_table(const IsoContext& ctx, std::span<const double> lambdas,
                                      Sign sign);
double max_identity_residual(const Correspondence& corr, std::span<const double> grid);
double check_derivative_relation(const Correspondence& corr, std::span<const double> grid,
                                 double h);
double hausdorff_distance(const Polyline& a, const Polyline& b);
std::vector<IsoCheck> check_isoperimetric_batch(const IsoContext& ctx,
                                                std::span<const Polyline> curves);

}  // namespace serial

}  // namespace fiso
