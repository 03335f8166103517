#pragma once

#include "finsler_iso/finsler_plane.hpp"
#include "finsler_iso/iso_profiles.hpp"

#include <stdexcept>
#include <vector>

namespace fiso {

class ContourError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters of one isoperimetric contour. The curve is
/// x = R sin°(θ°) + cx, y = -R cos°(θ°) + cy with θ°' = lambda - cos°(θ°),
/// θ°(0) = alpha, 0 <= t <= T.
struct IsoConstants {
  Sign sign = Sign::plus;
  double lambda = 0.0;
  double R = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double alpha = 0.0;
  double T = 0.0;
};

/// Unique constants of the contour of area A0 > 0 that starts at g0 with
/// polar angle alpha (reduced to one polar period).
IsoConstants solve_constants(const IsoContext& ctx, HyperbolicPoint g0, double area, double alpha,
                             Sign sign);

/// Point of the contour at polar angle theta_polar.
Vec2 contour_point(const IsoContext& ctx, const IsoConstants& k, double theta_polar);

struct ContourSample {
  double t = 0.0;
  double theta_polar = 0.0;
  Vec2 p;
};

struct Contour {
  std::vector<ContourSample> samples;
  IsoConstants constants;
  bool closed = false;
  /// Time at which θ° completes its revolution, from the integrated samples.
  double revolution_time = 0.0;
  /// θ°(T) - (alpha ± 2 S°).
  double closure_error = 0.0;

  /// Closed polyline through the samples; the last sample is replaced by the
  /// first point.
  Polyline polyline() const;
};

/// Integrates θ°' = lambda - cos°(θ°) with classical RK4 at fixed step T / n
/// (n >= 64). For polygon bodies steps are split where θ° crosses a polar
/// breakpoint and the crossing is emitted as an extra sample, so the
/// polyline through the samples is the contour itself. Throws ContourError
/// ("StepTooCoarse") when θ° misses one revolution by more than
/// 1e-7 (1 + 2 S°).
Contour synthesize_contour(const IsoContext& ctx, const IsoConstants& k, int n);

/// Polar boundary rotated, scaled and shifted: n points uniform in θ° plus
/// the polar table breakpoints, no time tags.
Contour direct_contour(const IsoContext& ctx, const IsoConstants& k, int n);

/// Inserts factor - 1 exact curve points between consecutive samples, plus
/// any polar table breakpoints the step passes.
Polyline densify(const IsoContext& ctx, const Contour& c, int factor);

/// Symmetric Hausdorff distance between the polylines as curves: the largest
/// distance from a vertex of one to the other polyline. Evaluated in parallel.
double hausdorff_distance(const Polyline& a, const Polyline& b);

struct IsoReport {
  double L_plus = 0.0;
  double L_minus = 0.0;
  double area = 0.0;
  double deficit_plus = 0.0;
  double deficit_minus = 0.0;
  /// True when the input ran clockwise and was reversed.
  bool reversed = false;
};

/// Measures a closed simple curve and compares with the least lengths of
/// both families: deficit+ = L+ - L+(A), deficit- = L- - L-(A), where L+ is
/// the counterclockwise length and L- the clockwise one. Throws PlaneError
/// (NotClosed, NotSimple, NonpositiveArea).
IsoReport check_isoperimetric(const IsoContext& ctx, const Polyline& curve);

}  // namespace fiso
