#include "finsler_iso/analytic_oracles.hpp"
#include "finsler_iso/contour_synth.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fiso;
using namespace testing;

namespace {

const double kPi = std::numbers::pi;

const IsoContext& disk() {
  static const IsoContext c = IsoContext::make(ConvexBody::pball(2.0));
  return c;
}
const IsoContext& penta() {
  static const IsoContext c = IsoContext::make(pentagon());
  return c;
}
const IsoContext& p3() {
  static const IsoContext c = IsoContext::make(ConvexBody::pball(3.0));
  return c;
}

}  // namespace

TEST_CASE("disk constants") {
  const IsoConstants k = solve_constants(disk(), {0, 1}, 2.0 * kPi, 0.0, Sign::plus);
  CHECK(k.lambda == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(k.R == doctest::Approx(3.0 + 2.0 * std::sqrt(3.0)).epsilon(1e-8));
  CHECK(std::abs(k.cx) < 1e-12);
  CHECK(k.cy == doctest::Approx(4.0 + 2.0 * std::sqrt(3.0)).epsilon(1e-8));
  CHECK(k.T == doctest::Approx(2.0 * kPi * std::sqrt(3.0)).epsilon(1e-8));
  const IsoConstants m = solve_constants(disk(), {0, 1}, 2.0 * kPi, 0.0, Sign::minus);
  CHECK(m.lambda < -1.0);
  CHECK(m.R < 0.0);
  CHECK(m.cy > 0.0);
}

TEST_CASE("contours start at g0 and satisfy the constant invariants") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  for (const IsoContext* c : {&p3(), &penta()}) {
    for (Sign s : {Sign::plus, Sign::minus}) {
      const HyperbolicPoint g0{0.4, 1.7};
      const IsoConstants k =
          solve_constants(*c, g0, 1.5, ua(rng) * c->polar_trig().period(), s);
      CHECK(distance(contour_point(*c, k, k.alpha), g0.vec()) < 1e-12);
      CHECK(sign_value(s) * k.R > 0.0);
      CHECK(k.cy == doctest::Approx(k.R * k.lambda));
    }
  }
  CHECK_THROWS_AS((void)solve_constants(disk(), {0, 1}, -1.0, 0.0, Sign::plus), ContourError);
  CHECK_THROWS_AS((void)solve_constants(disk(), {0, -1}, 1.0, 0.0, Sign::plus), PlaneError);
}

TEST_CASE("disk contour re-measured") {
  const IsoConstants k = solve_constants(disk(), {0, 1}, 2.0 * kPi, 0.0, Sign::plus);
  const Contour c = synthesize_contour(disk(), k, 4096);
  const Polyline poly = c.polyline();
  CHECK(std::abs(green_area(poly) - 2.0 * kPi) < 1e-5);
  CHECK(std::abs(curve_length(disk().body(), poly) - 2.0 * kPi * std::sqrt(3.0)) < 1e-5);
  CHECK(std::abs(c.closure_error) < 1e-7);
  // Euclidean circle of radius R about (cx, cy), lowest point at y = 1.
  double min_y = INFINITY;
  for (const auto& s : c.samples) {
    CHECK(std::abs(distance(s.p, {k.cx, k.cy}) - k.R) < 1e-9);
    min_y = std::min(min_y, s.p.y);
  }
  CHECK(min_y == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("minus contours run clockwise with decreasing angle") {
  const IsoConstants k = solve_constants(penta(), {0.2, 1.0}, 2.0, 0.3, Sign::minus);
  const Contour c = synthesize_contour(penta(), k, 2048);
  for (std::size_t i = 1; i < c.samples.size(); ++i) {
    CHECK(c.samples[i].theta_polar <= c.samples[i - 1].theta_polar);
  }
  CHECK(green_area(c.polyline()) == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("RK4 closure converges at fourth order") {
  // Needs a polar boundary with bounded third derivative: the disk and the
  // p = 1.5 ball (polar p = 3).
  for (double p : {2.0, 1.5}) {
    const IsoContext ctx = IsoContext::make(ConvexBody::pball(p));
    const IsoConstants k = solve_constants(ctx, {0, 1}, 1.0, 0.2, Sign::plus);
    const double e1 = std::abs(synthesize_contour(ctx, k, 128).closure_error);
    const double e2 = std::abs(synthesize_contour(ctx, k, 256).closure_error);
    CHECK(e1 / e2 >= 8.0);
  }
  const IsoConstants k = solve_constants(p3(), {0, 1}, 1.0, 0.2, Sign::plus);
  CHECK_THROWS_WITH_AS((void)synthesize_contour(p3(), k, 32), doctest::Contains("at least 64"),
                       ContourError);
  CHECK_THROWS_WITH_AS((void)synthesize_contour(p3(), k, 64), doctest::Contains("StepTooCoarse"),
                       ContourError);
}

TEST_CASE("polygon contours are exact polylines") {
  const IsoConstants k = solve_constants(penta(), {0.0, 1.0}, 3.0, 1.0, Sign::plus);
  const Contour c = synthesize_contour(penta(), k, 256);
  CHECK(std::abs(c.closure_error) < 1e-7);
  const Polyline poly = c.polyline();
  CHECK(std::abs(green_area(poly) - 3.0) < 1e-7);
  CHECK(std::abs(curve_length(penta().body(), poly) - k.T) < 1e-9 * k.T);
  // The direct construction traces the same polygon.
  CHECK(hausdorff_distance(poly, direct_contour(penta(), k, 64).polyline()) < 1e-10);
}

TEST_CASE("square contour is a diamond") {
  const IsoContext sq = IsoContext::make(ConvexBody::pball(INFINITY));
  const IsoConstants k = solve_constants(sq, {0, 1}, 2.0, 0.0, Sign::plus);
  const Contour d = direct_contour(sq, k, 4);
  REQUIRE(d.samples.size() == 5);
  const Vec2 center{k.cx, k.cy};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(distance(d.samples[i].p, center) - k.R) < 1e-12);
  CHECK(std::abs(oracle::square_iso_residual(k.T, 2.0)) < 1e-9);
}

TEST_CASE("synthesized and direct contours coincide") {
  for (const IsoContext* c : {&disk(), &p3()}) {
    const IsoConstants k = solve_constants(*c, {0.5, 1.2}, 2.0, 0.4, Sign::minus);
    const Contour syn = synthesize_contour(*c, k, 4096);
    const double h = hausdorff_distance(densify(*c, syn, 8), direct_contour(*c, k, 4 * 4096).polyline());
    CHECK(h < 1e-6);
  }
}

TEST_CASE("isoperimetric check") {
  const IsoConstants k = solve_constants(penta(), {0.0, 1.0}, 2.0, 0.0, Sign::plus);
  const Polyline poly = synthesize_contour(penta(), k, 1024).polyline();
  const IsoReport r = check_isoperimetric(penta(), poly);
  CHECK(std::abs(r.deficit_plus) < 1e-6 * k.T);
  CHECK(r.deficit_minus > 0.0);
  CHECK_FALSE(r.reversed);
  const IsoReport rr = check_isoperimetric(penta(), poly.reversed());
  CHECK(rr.reversed);
  CHECK(rr.L_plus == doctest::Approx(r.L_plus));

  // Radial noise strictly increases both deficits.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  const Vec2 center{k.cx, k.cy};
  Polyline bumpy = poly;
  for (std::size_t i = 0; i + 1 < bumpy.points.size(); ++i) {
    bumpy.points[i] = center + (bumpy.points[i] - center) * (1.0 + noise(rng));
  }
  bumpy.points.back() = bumpy.points.front();
  const IsoReport rb = check_isoperimetric(penta(), bumpy);
  CHECK(rb.deficit_plus > 0.0);
  CHECK(rb.deficit_minus > 0.0);

  Polyline open = poly;
  open.points.pop_back();
  CHECK_THROWS_AS((void)check_isoperimetric(penta(), open), PlaneError);
  const Polyline bow{{{0, 1}, {1, 2}, {1, 1}, {0, 2}, {0, 1}}, true};
  CHECK_THROWS_AS((void)check_isoperimetric(penta(), bow), PlaneError);
}

TEST_CASE("family and translation properties") {
  const HyperbolicPoint g0{0.3, 0.8};
  double lo = INFINITY;
  double hi = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double alpha = penta().polar_trig().period() * i / 6.0;
    const IsoConstants k = solve_constants(penta(), g0, 1.0, alpha, Sign::plus);
    const double L = curve_length(penta().body(), synthesize_contour(penta(), k, 512).polyline());
    lo = std::min(lo, L);
    hi = std::max(hi, L);
  }
  CHECK((hi - lo) / hi < 1e-8);

  const HyperbolicPoint g{1.5, 2.5};
  const IsoConstants k = solve_constants(p3(), g0, 1.0, 0.3, Sign::plus);
  const Vec2 moved = left_translate(g, g0.vec());
  const IsoConstants kt = solve_constants(p3(), {moved.x, moved.y}, 1.0, 0.3, Sign::plus);
  const Contour a = synthesize_contour(p3(), k, 512);
  const Contour b = synthesize_contour(p3(), kt, 512);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(distance(left_translate(g, a.samples[i].p), b.samples[i].p) < 1e-9);
  }
}
