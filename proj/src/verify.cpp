#include "finsler_iso/verify.hpp"

#include "finsler_iso/analytic_oracles.hpp"
#include "finsler_iso/contour_synth.hpp"
#include "finsler_iso/kernels.hpp"
#include "finsler_iso/numerics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

namespace fiso {

std::vector<NamedBody> shipped_bodies() {
  return {
      {"disk", ConvexBody::pball(2.0)},
      {"square", ConvexBody::pball(std::numeric_limits<double>::infinity())},
      {"diamond", ConvexBody::pball(1.0)},
      {"p3", ConvexBody::pball(3.0)},
      {"p1.5", ConvexBody::pball(1.5)},
      {"pentagon", ConvexBody::polygon({{1.3, 0.2}, {0.4, 1.1}, {-0.9, 0.7}, {-0.8, -0.6}, {0.5, -1.0}})},
  };
}

namespace {

struct StopVerify {};

std::optional<double> unit_pball_exponent(const ConvexBody& body) {
  if (!body.is_polygon()) {
    if (body.scale() == 1.0) return body.exponent();
    return std::nullopt;
  }
  if (body == ConvexBody::pball(1.0)) return 1.0;
  if (body == ConvexBody::pball(std::numeric_limits<double>::infinity())) {
    return std::numeric_limits<double>::infinity();
  }
  return std::nullopt;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Random θ° in [0, P) at least `margin` away from every regularity break.
std::vector<double> smooth_grid(const TrigTable& table, int n, double margin, std::mt19937_64& rng) {
  const auto breaks = regularity_breaks(table);
  std::uniform_real_distribution<double> u(0.0, table.period());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  while (static_cast<int>(out.size()) < n) {
    const double t = u(rng);
    bool ok = true;
    for (const double b : breaks) {
      double d = std::abs(t - b);
      d = std::min(d, table.period() - d);
      if (d < margin) ok = false;
    }
    if (ok) out.push_back(t);
  }
  return out;
}

class Runner {
 public:
  Runner(const VerifyOptions& opt, std::ostream* log) : opt_(opt), log_(log), rng_(opt.seed) {}

  VerifyReport run() {
    try {
      bool first = true;
      for (const auto& nb : opt_.bodies) {
        body_ = nb.name;
        if (log_) *log_ << "[verify] " << nb.name << '\n';
        const IsoContext ctx = IsoContext::make(nb.body, opt_.resolution);
        core(nb.body);
        trig(ctx, first && opt_.inject_trig_fault);
        plane(nb.body);
        profiles(ctx);
        oracles(ctx);
        contours(ctx);
        first = false;
      }
    } catch (const StopVerify&) {
    } catch (const std::exception& e) {
      report_.failures.push_back({"numeric_failure", body_, 0.0, 0.0, e.what()});
    }
    return report_;
  }

 private:
  bool full() const { return opt_.level == VerifyLevel::full; }
  int count(int fast, int full_count) const { return full() ? full_count : fast; }

  // Passes when value <= limit.
  void expect_le(const std::string& invariant, double value, double limit,
                 const std::string& detail = {}) {
    if (value <= limit) {
      ++report_.checks_passed;
      return;
    }
    report_.failures.push_back({invariant, body_, value, limit, detail});
    if (log_) *log_ << "[verify] FAIL " << invariant << " on " << body_ << '\n';
    throw StopVerify{};
  }

  void core(const ConvexBody& body) {
    const ConvexBody pol = polar(body);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double worst = 0.0;
    double worst_convex = 0.0;
    for (int i = 0; i < count(200, 1000); ++i) {
      const Vec2 v{u(rng_), u(rng_)};
      const Vec2 w{u(rng_), u(rng_)};
      worst = std::max(worst, std::abs(support(body, v) - gauge(pol, v)) / (1.0 + norm(v)));
      worst_convex =
          std::max(worst_convex, gauge(body, v + w) - gauge(body, v) - gauge(body, w));
    }
    expect_le("convex_core.duality", worst, 1e-10);
    expect_le("convex_core.convexity", worst_convex, 1e-12);

    const ConvexBody bipolar = polar(pol);
    double gap = 0.0;
    if (body.is_polygon()) {
      if (bipolar.vertices().size() != body.vertices().size()) {
        expect_le("convex_core.bipolar", 1.0, 0.0, "vertex count changed");
      }
      for (std::size_t i = 0; i < body.vertices().size(); ++i) {
        gap = std::max(gap, distance(bipolar.vertices()[i], body.vertices()[i]));
      }
      double boundary = 0.0;
      for (const auto& v : body.vertices()) boundary = std::max(boundary, std::abs(gauge(body, v) - 1.0));
      expect_le("convex_core.gauge_boundary", boundary, 1e-12);
    } else {
      gap = std::max(rel(bipolar.exponent(), body.exponent()), rel(bipolar.scale(), body.scale()));
    }
    expect_le("convex_core.bipolar", gap, 1e-10);
  }

  void trig(const IsoContext& ctx, bool inject) {
    for (const TrigTable* t : {&ctx.trig(), &ctx.polar_trig()}) {
      const double area = euclid_area(t->body());
      const double tol = t->exactness() == TrigExactness::exact_piecewise_linear ? 1e-13 : 1e-10;
      expect_le("convex_trig.period", rel(t->period(), 2.0 * area), tol);
    }

    const TrigTable table =
        inject ? ctx.trig().with_displaced_sample(ctx.trig().samples().size() / 3, {1e-6, 0.0})
               : ctx.trig();
    double on_boundary = 0.0;
    for (const auto& s : table.samples()) {
      on_boundary = std::max(on_boundary, std::abs(gauge(table.body(), s.point) - 1.0));
    }
    expect_le("convex_trig.samples_on_boundary", on_boundary, 1e-9);
    const Vec2 start = table.samples().front().point;
    expect_le("convex_trig.start_on_axis", std::abs(start.y) + (start.x > 0.0 ? 0.0 : 1.0), 0.0);

    const Correspondence& corr = ctx.correspondence();
    std::uniform_real_distribution<double> u(0.0, ctx.polar_trig().period());
    std::vector<double> grid(static_cast<std::size_t>(count(1000, 10000)));
    for (auto& g : grid) g = u(rng_);
    expect_le("convex_trig.pythagorean_identity", max_identity_residual(corr, grid), 1e-9);

    if (is_centrally_symmetric(ctx.body())) {
      double worst = 0.0;
      const TrigTable& t = ctx.trig();
      for (int i = 0; i < count(200, 2000); ++i) {
        const double th = u(rng_) * t.period() / ctx.polar_trig().period();
        worst = std::max(worst, norm(t.eval(th + 0.5 * t.period()) + t.eval(th)));
      }
      expect_le("convex_trig.central_symmetry", worst, 1e-9);
    }

    const double h = 1e-5;
    const double margin =
        ctx.polar_trig().exactness() == TrigExactness::exact_piecewise_linear
            ? 2.0 * h
            : 0.01 * ctx.polar_trig().period();
    const auto dgrid = smooth_grid(ctx.polar_trig(), count(500, 5000), margin, rng_);
    expect_le("convex_trig.derivative_relation", check_derivative_relation(corr, dgrid, h), 1e-7);
  }

  void plane(const ConvexBody& body) {
    // Random star-shaped closed polyline around (0, 3).
    std::uniform_real_distribution<double> u(0.5, 1.5);
    const int m = 40;
    Polyline curve{{}, true};
    for (int i = 0; i < m; ++i) {
      const double a = 2.0 * std::numbers::pi * i / m;
      const double r = u(rng_);
      curve.points.push_back({r * std::cos(a), 3.0 + r * std::sin(a)});
    }
    curve.points.push_back(curve.points.front());
    const HyperbolicPoint g{-1.7, 2.3};
    const Polyline moved = curve.translated(g);
    const double area = green_area(curve);
    const double length = curve_length(body, curve);
    expect_le("finsler_plane.area_translation", rel(green_area(moved), area), 1e-10);
    expect_le("finsler_plane.length_translation", rel(curve_length(body, moved), length), 1e-10);
    expect_le("finsler_plane.area_reversal", std::abs(green_area(curve.reversed()) + area),
              1e-14 * std::abs(area));
  }

  void profiles(const IsoContext& ctx) {
    const double m = ctx.singular_end(Sign::plus);
    const double s_polar = ctx.polar_area();
    std::uniform_real_distribution<double> gap(0.05, 5.0);

    double worst_de = 0.0;
    for (int i = 0; i < count(5, 50); ++i) {
      const double lambda = m + gap(rng_) * m;
      const double d = 5e-3 * (lambda - m);
      auto diff = [&](auto&& f) {
        return (f(lambda - 2 * d) - 8 * f(lambda - d) + 8 * f(lambda + d) - f(lambda + 2 * d)) /
               (12 * d);
      };
      const double dl = diff([&](double x) { return profile_length(ctx, x, Sign::plus); });
      const double df = diff([&](double x) { return profile_area(ctx, x, Sign::plus); });
      worst_de = std::max(worst_de, std::abs(dl - lambda * df) / (1.0 + std::abs(dl)));
    }
    expect_le("iso_profiles.differential_identity", worst_de, 1e-6);

    const ProfilePoint far = profile(ctx, 1e4, Sign::plus);
    expect_le("iso_profiles.length_asymptotics", std::abs(1e4 * far.L / (2 * s_polar) - 1.0), 1e-3);
    expect_le("iso_profiles.area_asymptotics", std::abs(1e8 * far.F / s_polar - 1.0), 1e-3);

    std::vector<double> lambdas;
    for (int k = 1; k <= 40; ++k) lambdas.push_back(m + 0.05 * k * m);
    const auto rows = profile_table(ctx, lambdas, Sign::plus);
    double rise = -std::numeric_limits<double>::infinity();
    double concave = 0.0;
    double alt = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].point) expect_le("iso_profiles.table_row", 1.0, 0.0, rows[i].error);
      alt = std::max(alt, rows[i].point->alt_discrepancy());
      if (i > 0) {
        rise = std::max({rise, rows[i].point->L - rows[i - 1].point->L,
                         rows[i].point->F - rows[i - 1].point->F});
      }
      if (i > 0 && i + 1 < rows.size()) {
        for (auto get : {+[](const ProfilePoint& p) { return p.L; },
                         +[](const ProfilePoint& p) { return p.F; }}) {
          concave = std::max(concave, -(get(*rows[i - 1].point) - 2 * get(*rows[i].point) +
                                        get(*rows[i + 1].point)));
        }
      }
    }
    expect_le("iso_profiles.strictly_decreasing", rise, -1e-300);
    expect_le("iso_profiles.convexity", concave, 1e-10);
    expect_le("iso_profiles.alt_form", alt, 1e-8);

    double worst_int = 0.0;
    for (int i = 0; i < count(2, 10); ++i) {
      const double lambda = m + gap(rng_) * m;
      // int_lambda^inf L(mu)/mu^2 dmu with mu = lambda / s.
      const double tail = num::integrate_smooth(
          [&](double s) { return profile_length(ctx, lambda / s, Sign::plus) / lambda; }, 0.0, 1.0,
          1e-12);
      const ProfilePoint pt = profile(ctx, lambda, Sign::plus);
      worst_int = std::max(worst_int, std::abs(pt.F - (pt.L / lambda - tail)) / (1.0 + pt.F));
    }
    expect_le("iso_profiles.integral_relation", worst_int, 1e-6);

    if (is_centrally_symmetric(ctx.body())) {
      double worst = 0.0;
      for (const double lambda : {m * 1.1, m * 2.0, m * 7.0}) {
        const ProfilePoint p = profile(ctx, lambda, Sign::plus);
        const ProfilePoint q = profile(ctx, -lambda, Sign::minus);
        worst = std::max({worst, rel(q.L, p.L), rel(-q.F, p.F)});
      }
      expect_le("iso_profiles.symmetric_families", worst, 1e-10);
    }

    double worst_rt = 0.0;
    for (const Sign sign : {Sign::plus, Sign::minus}) {
      const double lam = sign_value(sign) * (ctx.singular_end(sign) * 1.7);
      const double L = profile_length(ctx, lam, sign);
      worst_rt = std::max(worst_rt, rel(lambda_of_length(ctx, L, sign), lam));
    }
    expect_le("iso_profiles.inverse_roundtrip", worst_rt, 1e-8);

    double margin = std::numeric_limits<double>::infinity();
    for (const double a : {0.1, 1.0, 10.0}) {
      const double one = length_for_area(ctx, a, Sign::plus);
      for (const int k : {2, 3}) {
        margin = std::min(margin, k * one - length_for_area(ctx, k * a, Sign::plus));
      }
    }
    expect_le("iso_profiles.multi_loop_suboptimal", -margin, -1e-300);
  }

  void oracles(const IsoContext& ctx) {
    const auto p = unit_pball_exponent(ctx.body());
    if (!p) return;
    double worst = 0.0;
    for (const double lambda : {1.05, 1.5, 2.0, 5.0, 50.0}) {
      const ProfilePoint pt = profile(ctx, lambda, Sign::plus);
      const double tol = (*p == 1.5 && lambda == 1.05) ? 1e-6 : 1e-8;
      worst = std::max(worst, std::max(rel(pt.L, oracle::pball_L_plus(*p, lambda)),
                                       rel(pt.F, oracle::pball_F_plus(*p, lambda))) /
                                  tol);
    }
    expect_le("analytic_oracles.profile_agreement", worst, 1.0, "ratio to tolerance");
    const double a = asymptote_a_plus(ctx);
    const double a_ref = oracle::pball_a_plus(*p);
    if (std::isinf(a_ref)) {
      expect_le("analytic_oracles.a_plus_divergent", std::isinf(a) ? 0.0 : 1.0, 0.0);
    } else {
      expect_le("analytic_oracles.a_plus", rel(a, a_ref), 1e-4);
    }
  }

  void contours(const IsoContext& ctx) {
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    std::uniform_real_distribution<double> uy(0.5, 3.0);
    std::uniform_real_distribution<double> ua(0.2, 8.0);
    std::uniform_real_distribution<double> ualpha(0.0, ctx.polar_trig().period());
    const int n = 16384;
    for (int i = 0; i < count(1, 4); ++i) {
      const Sign sign = i % 2 == 0 ? Sign::plus : Sign::minus;
      const HyperbolicPoint g0{ux(rng_), uy(rng_)};
      const double area = ua(rng_);
      const IsoConstants k = solve_constants(ctx, g0, area, ualpha(rng_), sign);
      const Contour c = synthesize_contour(ctx, k, n);
      const Polyline poly = c.polyline();
      expect_le("contour_synth.closure", std::abs(c.closure_error),
                1e-7 * (1.0 + ctx.polar_trig().period()));
      expect_le("contour_synth.revolution_time", rel(c.revolution_time, k.T), 1e-7);
      expect_le("contour_synth.area", rel(sign_value(sign) * green_area(poly), area), 1e-6);
      expect_le("contour_synth.length", rel(curve_length(ctx.body(), poly), k.T), 1e-5);
      const IsoReport rep = check_isoperimetric(ctx, poly);
      const double def = sign == Sign::plus ? rep.deficit_plus : rep.deficit_minus;
      expect_le("contour_synth.equality_deficit_low", -def, 1e-6 * k.T);
      expect_le("contour_synth.equality_deficit_high", def, 1e-5 * k.T);
      if (full()) {
        const Polyline dense = densify(ctx, c, 4);
        const Polyline direct = direct_contour(ctx, k, 4 * n).polyline();
        expect_le("contour_synth.hausdorff", hausdorff_distance(dense, direct), 1e-6);
      }
    }

    // All start angles give the same length; left translations carry
    // contours to contours.
    const HyperbolicPoint g0{ux(rng_), uy(rng_)};
    const double area = ua(rng_);
    const int members = count(4, 16);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int i = 0; i < members; ++i) {
      const double alpha = ctx.polar_trig().period() * i / members;
      const IsoConstants k = solve_constants(ctx, g0, area, alpha, Sign::plus);
      const double L = curve_length(ctx.body(), densify(ctx, synthesize_contour(ctx, k, 4096), 4));
      lo = std::min(lo, L);
      hi = std::max(hi, L);
    }
    expect_le("contour_synth.family_spread", (hi - lo) / hi, 1e-8);
    const HyperbolicPoint g{ux(rng_), uy(rng_)};
    const Vec2 moved = left_translate(g, g0.vec());
    const IsoConstants k = solve_constants(ctx, g0, area, 0.5, Sign::minus);
    const IsoConstants kt = solve_constants(ctx, {moved.x, moved.y}, area, 0.5, Sign::minus);
    const Contour a = synthesize_contour(ctx, k, 1024);
    const Contour b = synthesize_contour(ctx, kt, 1024);
    double mismatch = a.samples.size() == b.samples.size() ? 0.0 : 1.0;
    for (std::size_t i = 0; mismatch < 1.0 && i < a.samples.size(); ++i) {
      mismatch = std::max(mismatch, distance(left_translate(g, a.samples[i].p), b.samples[i].p) /
                                        (1.0 + norm(b.samples[i].p)));
    }
    expect_le("contour_synth.translation_equivariance", mismatch, 1e-9);
  }

  const VerifyOptions& opt_;
  std::ostream* log_;
  std::mt19937_64 rng_;
  std::string body_;
  VerifyReport report_;
};

}  // namespace

VerifyReport run_verify(const VerifyOptions& options, std::ostream* log) {
  return Runner(options, log).run();
}

std::string report_json(const VerifyReport& report) {
  nlohmann::json j;
  j["ok"] = report.ok();
  j["checks_passed"] = report.checks_passed;
  j["failures"] = nlohmann::json::array();
  for (const auto& f : report.failures) {
    j["failures"].push_back({{"invariant", f.invariant},
                             {"body", f.body},
                             {"value", f.value},
                             {"limit", f.limit},
                             {"detail", f.detail}});
  }
  return j.dump();
}

}  // namespace fiso
