#include "finsler_iso/csv_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace fiso {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trig_csv(std::ostream& out, const TrigTable& table, int n) {
  out << "theta,cos,sin\n";
  for (int i = 0; i < n; ++i) {
    const double theta = table.period() * i / n;
    const Vec2 p = table.eval(theta);
    out << format_number(theta) << ',' << format_number(p.x) << ',' << format_number(p.y) << '\n';
  }
}

void write_polyline_csv(std::ostream& out, const Polyline& curve, std::span<const double> times) {
  out << "t,x,y\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    if (i < times.size()) out << format_number(times[i]);
    out << ',' << format_number(curve.points[i].x) << ',' << format_number(curve.points[i].y)
        << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

Polyline read_polyline_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("polyline csv: empty input");
  auto header = split(line);
  for (auto& h : header) h = trim(h);
  int ix = -1;
  int iy = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "x") ix = static_cast<int>(i);
    if (header[i] == "y") iy = static_cast<int>(i);
  }
  if (ix < 0 || iy < 0) throw CsvError("polyline csv: header needs x and y columns");
  Polyline curve;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() <= static_cast<std::size_t>(std::max(ix, iy))) {
      throw CsvError("polyline csv: line " + std::to_string(lineno) + " has too few columns");
    }
    try {
      curve.points.push_back({std::stod(cells[ix]), std::stod(cells[iy])});
    } catch (const std::exception&) {
      throw CsvError("polyline csv: line " + std::to_string(lineno) + " is not numeric");
    }
  }
  curve.closed = curve.points.size() > 2 && curve.points.front() == curve.points.back();
  return curve;
}

void write_profile_csv(std::ostream& out, std::span<const ProfileRow> rows, Sign sign) {
  out << "lambda,L,F,sign\n";
  for (const auto& r : rows) {
    if (!r.point) continue;
    out << format_number(r.lambda) << ',' << format_number(r.point->L) << ','
        << format_number(r.point->F) << ',' << (sign == Sign::plus ? 1 : -1) << '\n';
  }
}

void write_contour_csv(std::ostream& out, const Contour& contour) {
  out << "t,theta0,x,y\n";
  auto row = [&](double t, double theta, Vec2 p) {
    out << format_number(t) << ',' << format_number(theta) << ',' << format_number(p.x) << ','
        << format_number(p.y) << '\n';
  };
  const auto& samples = contour.samples;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    // A closed contour ends exactly where it starts, as in Contour::polyline.
    const bool last = contour.closed && i + 1 == samples.size() && i > 0;
    if (!last) {
      row(s.t, s.theta_polar, s.p);
      continue;
    }
    const Vec2 front = samples.front().p;
    if (distance(s.p, front) <= 1e-8 * (1.0 + norm(front))) {
      row(s.t, s.theta_polar, front);
    } else {
      row(s.t, s.theta_polar, s.p);
      row(s.t, s.theta_polar, front);
    }
  }
}

std::string constants_json(const IsoConstants& k) {
  std::ostringstream os;
  os << "{\"sign\":" << (k.sign == Sign::plus ? 1 : -1)
     << ",\"lambda\":" << format_number(k.lambda) << ",\"R\":" << format_number(k.R)
     << ",\"cx\":" << format_number(k.cx) << ",\"cy\":" << format_number(k.cy)
     << ",\"alpha\":" << format_number(k.alpha) << ",\"T\":" << format_number(k.T) << "}";
  return os.str();
}

IsoConstants parse_constants_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    IsoConstants k;
    k.sign = j.at("sign").get<int>() > 0 ? Sign::plus : Sign::minus;
    k.lambda = j.at("lambda").get<double>();
    k.R = j.at("R").get<double>();
    k.cx = j.at("cx").get<double>();
    k.cy = j.at("cy").get<double>();
    k.alpha = j.at("alpha").get<double>();
    k.T = j.at("T").get<double>();
    return k;
  } catch (const nlohmann::json::exception& e) {
    throw CsvError(std::string("constants json: ") + e.what());
  }
}

void write_isocurve_csv(std::ostream& out, std::span<const IsocurveRow> rows) {
  out << "L,F_plus,F_minus_neg\n";
  for (const auto& r : rows) {
    out << format_number(r.L) << ',' << format_number(r.F_plus) << ','
        << format_number(r.F_minus_neg) << '\n';
  }
}

}  // namespace fiso
