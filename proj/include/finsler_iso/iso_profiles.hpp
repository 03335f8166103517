#pragma once

#include "finsler_iso/convex_body.hpp"
#include "finsler_iso/convex_trig.hpp"

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fiso {

/// Orientation family: plus runs counterclockwise, minus clockwise.
enum class Sign { plus = 1, minus = -1 };

constexpr double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
const char* to_string(Sign s);

class ProfileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProfileSettings {
  /// Smallest admissible distance of lambda from the singular end.
  double eps_min = 1e-9;
  /// Quadrature bodies reject lambda closer than this fraction of the
  /// singular end; polygons are exact and use eps_min only.
  double near_singular_rel = 1e-6;
  /// Relative tolerance of the p-ball quadratures.
  double quad_rel_tol = 1e-12;
};

/// A body with its polar, both trig tables and the angle correspondence.
/// Immutable; safe to share between threads.
class IsoContext {
 public:
  static IsoContext make(const ConvexBody& body, int resolution = 4096,
                         ProfileSettings settings = {});

  const ConvexBody& body() const noexcept { return body_; }
  const ConvexBody& polar_body() const noexcept { return polar_; }
  const TrigTable& trig() const noexcept { return *trig_; }
  const TrigTable& polar_trig() const noexcept { return *polar_trig_; }
  const Correspondence& correspondence() const noexcept { return *corr_; }
  const ProfileSettings& settings() const noexcept { return settings_; }

  /// M+° and M-° of the polar body.
  Extents polar_extents() const noexcept { return polar_ext_; }
  /// Euclidean area of the polar body.
  double polar_area() const noexcept { return polar_area_; }

  /// M+° for plus, M-° for minus.
  double singular_end(Sign s) const;
  /// Smallest admissible |lambda| - singular_end for this body.
  double min_gap(Sign s) const;

 private:
  IsoContext() = default;

  ConvexBody body_ = ConvexBody::pball(2.0);
  ConvexBody polar_ = ConvexBody::pball(2.0);
  std::shared_ptr<const TrigTable> trig_;
  std::shared_ptr<const TrigTable> polar_trig_;
  std::shared_ptr<const Correspondence> corr_;
  ProfileSettings settings_;
  Extents polar_ext_;
  double polar_area_ = 0.0;
};

/// Length and signed area of the one-revolution extremal with parameter
/// lambda. F_alt is the area by the integrated-by-parts form.
struct ProfilePoint {
  double lambda = 0.0;
  double L = 0.0;
  double F = 0.0;
  Sign sign = Sign::plus;
  double F_alt = 0.0;

  double alt_discrepancy() const;
};

/// L(lambda) = int dθ° / (s (lambda - cos°)), F(lambda) = int cos(θ(θ°)) dθ° /
/// (s (lambda - cos°)) over one polar period, s = +1 / -1. Requires
/// lambda > M+° (plus) or lambda < -M-° (minus); throws ProfileError
/// ("LambdaOutOfDomain") otherwise.
ProfilePoint profile(const IsoContext& ctx, double lambda, Sign sign);

/// Length only.
double profile_length(const IsoContext& ctx, double lambda, Sign sign);
/// Signed area only.
double profile_area(const IsoContext& ctx, double lambda, Sign sign);

/// The unique lambda with F(lambda) = +A (plus) or -A (minus), A > 0.
double solve_lambda_for_area(const IsoContext& ctx, double area, Sign sign);

/// The unique lambda with L(lambda) = length.
double lambda_of_length(const IsoContext& ctx, double length, Sign sign);

/// Boundary curve F(L) = F_sign(Lambda_sign(L)); negative for minus.
double area_for_length(const IsoContext& ctx, double length, Sign sign);

/// Least length enclosing area A > 0 in the given family: the inverse of
/// area_for_length evaluated at +A (plus) or -A (minus).
double length_for_area(const IsoContext& ctx, double area, Sign sign);

/// Intercept a+ of the asymptote F ~ L / M+° - a+ of the plus boundary
/// curve, or +inf when the curve has no asymptote.
///
/// Exchanging the order of integration in lim int_lambda^inf L(mu)/mu^2 dmu
/// gives the single integral int G(cos°(θ°)) dθ° with
/// G(c) = -1/(c M) - ln(1 - c/M)/c^2, M = M+°, finite iff cos° does not sit
/// at M on an interval of positive length.
double asymptote_a_plus(const IsoContext& ctx);

/// One row of a profile grid; `error` is set when lambda is outside the
/// domain.
struct ProfileRow {
  double lambda = 0.0;
  std::optional<ProfilePoint> point;
  std::string error;
};

/// Profiles over a grid, evaluated in parallel; output order follows the grid.
std::vector<ProfileRow> profile_table(const IsoContext& ctx, std::span<const double> lambdas,
                                      Sign sign);

}  // namespace fiso
