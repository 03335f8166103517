#pragma once

#include "finsler_iso/convex_body.hpp"
#include "finsler_iso/vec2.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace fiso {

class TrigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TrigExactness { exact_piecewise_linear, interpolated };

struct TrigSample {
  double theta = 0.0;
  Vec2 point;  // (cos, sin) at theta
};

/// Generalized trigonometric functions of a body: the boundary parametrized by
/// doubled swept sector area, starting on the positive x-axis and running
/// counterclockwise. The period is twice the Euclidean area.
///
/// Polygons are exact: along an edge from a to b the point a + s (b - a)
/// sweeps doubled area s * cross(a, b), so cos and sin are piecewise linear.
/// p-balls store a graded grid of boundary samples; evaluation starts from a
/// cubic Hermite guess and is polished by Newton steps against the exact
/// sector-area integral, so returned points lie on the boundary.
class TrigTable {
 public:
  static constexpr int kMinResolution = 16;

  /// resolution is the number of grid samples per period for p-balls (raised
  /// to a multiple of 4); polygons ignore it. Throws TrigError
  /// ("ResolutionTooLow") below kMinResolution for p-balls.
  static TrigTable build(const ConvexBody& body, int resolution = 4096);

  const ConvexBody& body() const noexcept { return body_; }
  double period() const noexcept { return period_; }
  TrigExactness exactness() const noexcept { return exactness_; }

  /// Polygons: one sample per piece start (vertices plus the x-axis point).
  /// p-balls: the grid.
  std::span<const TrigSample> samples() const noexcept { return samples_; }

  /// Theta values in [0, period) where the parametrization changes piece.
  std::vector<double> breakpoints() const;

  /// (cos, sin) at theta, periodic.
  Vec2 eval(double theta) const;

  /// Generalized angle in [0, period) of the boundary point in the direction
  /// of v (v != 0).
  double theta_of_direction(Vec2 v) const;

  /// theta reduced to [0, period); `turns` receives the number of whole
  /// periods removed.
  double reduce(double theta, long* turns = nullptr) const;

  /// Index of the piece [samples[i].theta, samples[i+1].theta) containing
  /// the reduced angle.
  std::size_t piece_of(double reduced_theta) const;

  /// Copy with one stored sample displaced; used to exercise invariant
  /// checks.
  TrigTable with_displaced_sample(std::size_t index, Vec2 offset) const;

 private:
  explicit TrigTable(const ConvexBody& body) : body_(body) {}

  double sector_integral(double phi_from, double phi_to) const;
  double polish_phi(std::size_t piece, double theta) const;

  ConvexBody body_;
  double period_ = 0.0;
  TrigExactness exactness_ = TrigExactness::exact_piecewise_linear;
  std::vector<TrigSample> samples_;
  std::vector<double> angles_;  // polar angle of each sample, in [0, 2 pi)
};

/// Map theta_polar -> theta between corresponding angles of a body and its
/// polar, i.e. pairs with cos(theta) cos°(theta°) + sin(theta) sin°(theta°) = 1.
///
/// The map is monotone and equivariant: theta(theta° + P°) = theta(theta°) + P.
/// At a vertex of the polar boundary the admissible theta form an interval
/// and the midpoint is returned.
class Correspondence {
 public:
  enum class Convention { interval_midpoint };

  Correspondence(std::shared_ptr<const TrigTable> primal, std::shared_ptr<const TrigTable> polar);

  const TrigTable& primal() const noexcept { return *primal_; }
  const TrigTable& polar() const noexcept { return *polar_; }
  Convention convention() const noexcept { return Convention::interval_midpoint; }

  double theta(double theta_polar) const;

  /// Point of the primal boundary dual to the polar point at theta_polar.
  Vec2 dual_point(double theta_polar) const;

  /// |cos cos° + sin sin° - 1| at theta_polar.
  double identity_residual(double theta_polar) const;

  /// Polygons: primal angle attached to each polar piece, unwrapped to be
  /// nondecreasing.
  std::span<const double> piece_thetas() const noexcept { return piece_theta_; }

 private:
  std::shared_ptr<const TrigTable> primal_;
  std::shared_ptr<const TrigTable> polar_;
  std::vector<double> piece_theta_;
};

/// Angles in [0, period) where the boundary loses smoothness: the vertices
/// of a polygon, the four axis points of a p-ball with p != 2 (its curvature
/// vanishes or blows up there), none for the disk.
std::vector<double> regularity_breaks(const TrigTable& table);

/// Central-difference residual of cos°' = -sin(theta(theta°)),
/// sin°' = cos(theta(theta°)) at a single polar angle.
double derivative_residual(const Correspondence& corr, double theta_polar, double h);

/// Max of derivative_residual over the grid. Grid points must stay at least h
/// away from breakpoints.
double check_derivative_relation(const Correspondence& corr, std::span<const double> grid,
                                 double h);

}  // namespace fiso
