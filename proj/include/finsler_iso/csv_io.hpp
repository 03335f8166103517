#pragma once

#include "finsler_iso/contour_synth.hpp"
#include "finsler_iso/convex_trig.hpp"
#include "finsler_iso/iso_profiles.hpp"

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fiso {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits; parses back to the same double.
std::string format_number(double v);

/// theta,cos,sin at n points uniform over one period.
void write_trig_csv(std::ostream& out, const TrigTable& table, int n);

/// t,x,y; t is left empty when times is empty.
void write_polyline_csv(std::ostream& out, const Polyline& curve, std::span<const double> times = {});

/// Reads t,x,y or x,y (header required). The polyline is closed when the last
/// point repeats the first.
Polyline read_polyline_csv(std::istream& in);

/// lambda,L,F,sign; rows with errors are skipped.
void write_profile_csv(std::ostream& out, std::span<const ProfileRow> rows, Sign sign);

/// t,theta0,x,y.
void write_contour_csv(std::ostream& out, const Contour& contour);

/// {"sign":..,"lambda":..,"R":..,"cx":..,"cy":..,"alpha":..,"T":..}
std::string constants_json(const IsoConstants& k);
IsoConstants parse_constants_json(const std::string& text);

struct IsocurveRow {
  double L = 0.0;
  double F_plus = 0.0;
  double F_minus_neg = 0.0;
};

/// L,F_plus,F_minus_neg.
void write_isocurve_csv(std::ostream& out, std::span<const IsocurveRow> rows);

}  // namespace fiso
