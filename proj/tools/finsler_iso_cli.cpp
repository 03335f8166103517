// finsler-iso: generalized trig tables, isoperimetric profiles and contours
// of left-invariant Finsler metrics on the upper half-plane.
//
// Exit codes: 0 ok, 1 invariant failure, 2 input error, 3 numeric failure
// (a contour that fails its own checks counts as numeric).

#include "finsler_iso/body_spec.hpp"
#include "finsler_iso/contour_synth.hpp"
#include "finsler_iso/csv_io.hpp"
#include "finsler_iso/kernels.hpp"
#include "finsler_iso/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace fiso;

namespace {

enum Exit { kOk = 0, kInvariant = 1, kInput = 2, kNumeric = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string spec;
  std::string out = ".";
  int resolution = 4096;
  int samples = 4096;
  double eps_min = 1e-9;
  std::uint64_t seed = 20240607;
};

ConvexBody load_body(const Common& c) {
  if (c.spec.empty()) throw InputError("--spec is required");
  return load_body_spec(c.spec);
}

IsoContext load_context(const Common& c) {
  ProfileSettings settings;
  settings.eps_min = c.eps_min;
  return IsoContext::make(load_body(c), c.resolution, settings);
}

std::ofstream open_out(const Common& c, const std::string& name) {
  fs::create_directories(c.out);
  const fs::path path = fs::path(c.out) / name;
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path.string());
  return f;
}

Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus" || s == "1" || s == "+1") return Sign::plus;
  if (s == "-" || s == "minus" || s == "-1") return Sign::minus;
  throw InputError("--sign must be + or -");
}

std::vector<Sign> parse_signs(const std::string& s) {
  if (s == "both") return {Sign::plus, Sign::minus};
  return {parse_sign(s)};
}

const char* sign_word(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

std::string num(double v) { return format_number(v); }

int cmd_body_info(const Common& c) {
  const IsoContext ctx = load_context(c);
  const ConvexBody& b = ctx.body();
  const double a_plus = asymptote_a_plus(ctx);
  std::cout << "body: " << b.describe() << '\n'
            << "polar: " << ctx.polar_body().describe() << '\n'
            << "area: " << num(euclid_area(b)) << '\n'
            << "polar_area: " << num(ctx.polar_area()) << '\n'
            << "M_plus_polar: " << num(ctx.polar_extents().m_plus) << '\n'
            << "M_minus_polar: " << num(ctx.polar_extents().m_minus) << '\n'
            << "period: " << num(ctx.trig().period()) << '\n'
            << "polar_period: " << num(ctx.polar_trig().period()) << '\n'
            << "centrally_symmetric: " << (is_centrally_symmetric(b) ? "true" : "false") << '\n'
            << "a_plus: " << (std::isinf(a_plus) ? std::string("inf") : num(a_plus)) << '\n';
  return kOk;
}

int cmd_trig(const Common& c) {
  const IsoContext ctx = load_context(c);
  if (c.samples < 1) throw InputError("--samples must be positive");
  auto f = open_out(c, "trig.csv");
  write_trig_csv(f, ctx.trig(), c.samples);
  auto g = open_out(c, "polar_trig.csv");
  write_trig_csv(g, ctx.polar_trig(), c.samples);
  std::cout << "wrote " << (fs::path(c.out) / "trig.csv").string() << " and polar_trig.csv\n";
  return kOk;
}

struct ProfileArgs {
  std::string sign = "both";
  std::optional<double> from;
  std::optional<double> to;
  int count = 200;
};

int cmd_profile(const Common& c, const ProfileArgs& a) {
  const IsoContext ctx = load_context(c);
  if (a.count < 1) throw InputError("--count must be positive");
  int errors = 0;
  for (const Sign sign : parse_signs(a.sign)) {
    const double s = sign_value(sign);
    const double end = ctx.singular_end(sign);
    // Default grid in |lambda| from just above the singular end to 10 times it.
    const double lo = a.from.value_or(s * end * 1.01);
    const double hi = a.to.value_or(s * end * 10.0);
    std::vector<double> lambdas(static_cast<std::size_t>(a.count));
    for (int i = 0; i < a.count; ++i) {
      lambdas[i] = a.count == 1 ? lo : lo + (hi - lo) * i / (a.count - 1);
    }
    const auto rows = profile_table(ctx, lambdas, sign);
    auto f = open_out(c, std::string("profile_") + sign_word(sign) + ".csv");
    write_profile_csv(f, rows, sign);
    for (const auto& r : rows) {
      if (!r.error.empty()) {
        std::cerr << "row lambda=" << num(r.lambda) << ": " << r.error << '\n';
        ++errors;
      }
    }
  }
  return errors ? kInput : kOk;
}

struct ContourArgs {
  double x0 = 0.0;
  double y0 = 1.0;
  double area = 1.0;
  double alpha = 0.0;
  std::string sign = "+";
  int family = 0;
};

void write_contour(const Common& c, const IsoContext& ctx, const IsoConstants& k, double area0,
                   const std::string& stem) {
  const Contour contour = synthesize_contour(ctx, k, c.samples);
  const Polyline poly = contour.polyline();
  const double area = green_area(poly);
  const double length = curve_length(ctx.body(), poly);
  const IsoReport rep = check_isoperimetric(ctx, poly);
  auto f = open_out(c, stem + ".csv");
  write_contour_csv(f, contour);
  auto g = open_out(c, stem + ".json");
  g << constants_json(k) << '\n';

  const double s = sign_value(k.sign);
  const double deficit = k.sign == Sign::plus ? rep.deficit_plus : rep.deficit_minus;
  std::cout << stem << ": sign=" << to_string(k.sign) << " lambda=" << num(k.lambda)
            << " T=" << num(k.T) << " length=" << num(length) << " area=" << num(area)
            << " deficit_plus=" << num(rep.deficit_plus)
            << " deficit_minus=" << num(rep.deficit_minus) << '\n';
  if (std::abs(area - s * area0) > 1e-6 * area0) {
    throw InvariantError(stem + ": measured area " + num(area) + " differs from the target");
  }
  if (std::abs(length - k.T) > 1e-5 * k.T) throw InvariantError(stem + ": length differs from T");
  if (deficit < -1e-6 * k.T || deficit > 1e-5 * k.T) {
    throw InvariantError(stem + ": equality contour has deficit " + num(deficit));
  }
}

int cmd_contour(const Common& c, const ContourArgs& a) {
  if (!(a.area > 0.0)) throw InputError("--area must be positive");
  if (!(a.y0 > 0.0)) throw InputError("--y0 must be positive");
  if (c.samples < 64) throw InputError("--samples must be at least 64");
  if (a.family < 0) throw InputError("--family must be non-negative");
  const IsoContext ctx = load_context(c);
  const Sign sign = parse_sign(a.sign);
  const HyperbolicPoint g0{a.x0, a.y0};
  if (a.family == 0) {
    write_contour(c, ctx, solve_constants(ctx, g0, a.area, a.alpha, sign), a.area, "contour");
    return kOk;
  }
  const double period = ctx.polar_trig().period();
  for (int i = 0; i < a.family; ++i) {
    const double alpha = a.alpha + period * i / a.family;
    write_contour(c, ctx, solve_constants(ctx, g0, a.area, alpha, sign), a.area,
                  "contour_" + std::to_string(i));
  }
  return kOk;
}

struct IsocurveArgs {
  double l_max = 20.0;
  int count = 200;
};

int cmd_isocurve(const Common& c, const IsocurveArgs& a) {
  if (!(a.l_max > 0.0)) throw InputError("--L-max must be positive");
  if (a.count < 2) throw InputError("--count must be at least 2");
  const IsoContext ctx = load_context(c);
  std::vector<IsocurveRow> rows(static_cast<std::size_t>(a.count));
  const double l_min = a.l_max * 1e-3;
  for (int i = 0; i < a.count; ++i) {
    const double L = l_min * std::pow(a.l_max / l_min, static_cast<double>(i) / (a.count - 1));
    rows[i] = {L, area_for_length(ctx, L, Sign::plus), -area_for_length(ctx, L, Sign::minus)};
  }
  auto f = open_out(c, "isocurve.csv");
  write_isocurve_csv(f, rows);
  const double a_plus = asymptote_a_plus(ctx);
  if (std::isfinite(a_plus)) {
    auto g = open_out(c, "asymptote.json");
    g << "{\"slope\":" << num(1.0 / ctx.polar_extents().m_plus)
      << ",\"intercept\":" << num(-a_plus) << ",\"a_plus\":" << num(a_plus) << "}\n";
  }
  std::cout << "wrote " << rows.size() << " rows; a_plus="
            << (std::isinf(a_plus) ? std::string("inf") : num(a_plus)) << '\n';
  return kOk;
}

struct CheckArgs {
  std::string curve;
};

int cmd_check(const Common& c, const CheckArgs& a) {
  const IsoContext ctx = load_context(c);
  std::ifstream in(a.curve);
  if (!in) throw InputError("cannot open " + a.curve);
  const Polyline poly = read_polyline_csv(in);
  IsoReport rep;
  try {
    rep = check_isoperimetric(ctx, poly);
  } catch (const PlaneError& e) {
    throw InputError(e.what());
  }
  std::cout << "L_plus=" << num(rep.L_plus) << " L_minus=" << num(rep.L_minus)
            << " area=" << num(rep.area) << " deficit_plus=" << num(rep.deficit_plus)
            << " deficit_minus=" << num(rep.deficit_minus) << '\n';
  const double tol = 1e-6 * std::max(rep.L_plus, rep.L_minus);
  if (rep.deficit_plus < -tol || rep.deficit_minus < -tol) {
    throw InvariantError("isoperimetric inequality violated");
  }
  return kOk;
}

struct VerifyArgs {
  std::string level = "fast";
  bool inject_fault = false;
};

int cmd_verify(const Common& c, const VerifyArgs& a) {
  VerifyOptions opt;
  if (a.level == "fast") {
    opt.level = VerifyLevel::fast;
  } else if (a.level == "full") {
    opt.level = VerifyLevel::full;
  } else {
    throw InputError("--level must be fast or full");
  }
  opt.seed = c.seed;
  opt.resolution = c.resolution;
  opt.inject_trig_fault = a.inject_fault;
  if (!c.spec.empty()) opt.bodies = {{fs::path(c.spec).stem().string(), load_body(c)}};
  const VerifyReport rep = run_verify(opt, &std::cerr);
  std::cout << report_json(rep) << '\n';
  return rep.ok() ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isoperimetric contours of left-invariant Finsler metrics on the half-plane"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", common.spec, "Body spec JSON");
    sub->add_option("--out", common.out, "Output directory")->capture_default_str();
    sub->add_option("--resolution", common.resolution, "p-ball trig table resolution")
        ->capture_default_str()
        ->check(CLI::Range(16, 1 << 24));
    sub->add_option("--samples", common.samples, "Sample / step count")->capture_default_str();
    sub->add_option("--eps-min", common.eps_min, "Smallest lambda gap to the singular end")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", common.seed, "Seed for randomized checks")->capture_default_str();
  };

  auto* info = app.add_subcommand("body-info", "Area, polar, extents and periods");
  add_common(info);
  auto* trig = app.add_subcommand("trig", "Dump trig tables of the body and its polar");
  add_common(trig);

  ProfileArgs pa;
  auto* prof = app.add_subcommand("profile", "L(lambda), F(lambda) over a lambda grid");
  add_common(prof);
  prof->add_option("--sign", pa.sign, "+, - or both")->capture_default_str();
  prof->add_option("--from", pa.from, "First lambda");
  prof->add_option("--to", pa.to, "Last lambda");
  prof->add_option("--count", pa.count, "Grid size")->capture_default_str();

  ContourArgs ca;
  auto* cont = app.add_subcommand("contour", "Synthesize an isoperimetric contour");
  add_common(cont);
  cont->add_option("--x0", ca.x0, "Start point x")->capture_default_str();
  cont->add_option("--y0", ca.y0, "Start point y")->capture_default_str();
  cont->add_option("--area", ca.area, "Enclosed area")->capture_default_str();
  cont->add_option("--alpha", ca.alpha, "Start polar angle")->capture_default_str();
  cont->add_option("--sign", ca.sign, "+ or -")->capture_default_str();
  cont->add_option("--family", ca.family, "Number of start angles spread over one period");

  IsocurveArgs ia;
  auto* iso = app.add_subcommand("isocurve", "Boundary curves (L, F+(L)) and (L, -F-(L))");
  add_common(iso);
  iso->add_option("--L-max", ia.l_max, "Largest length")->capture_default_str();
  iso->add_option("--count", ia.count, "Grid size")->capture_default_str();

  CheckArgs ka;
  auto* check = app.add_subcommand("check", "Isoperimetric deficits of a polyline CSV");
  add_common(check);
  check->add_option("--curve", ka.curve, "Polyline CSV (t,x,y or x,y)")->required();

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run the invariant suites");
  add_common(ver);
  ver->add_option("--level", va.level, "fast or full")->capture_default_str();
  ver->add_flag("--inject-trig-fault", va.inject_fault, "Corrupt one trig sample first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*info) return cmd_body_info(common);
    if (*trig) return cmd_trig(common);
    if (*prof) return cmd_profile(common, pa);
    if (*cont) {
      // A contour that fails its own invariants is a numeric failure.
      try {
        return cmd_contour(common, ca);
      } catch (const InvariantError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumeric;
      }
    }
    if (*iso) return cmd_isocurve(common, ia);
    if (*check) return cmd_check(common, ka);
    if (*ver) return cmd_verify(common, va);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const BodyError& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kInput;
  } catch (const CsvError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
  return kOk;
}
