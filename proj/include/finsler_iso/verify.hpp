#pragma once

#include "finsler_iso/convex_body.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fiso {

struct NamedBody {
  std::string name;
  ConvexBody body;
};

/// disk, square, diamond, p3, p1.5 and a non-symmetric pentagon; the same
/// bodies ship as JSON specs under bodies/.
std::vector<NamedBody> shipped_bodies();

enum class VerifyLevel { fast, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::fast;
  std::uint64_t seed = 20240607;
  int resolution = 4096;
  /// Displaces one stored trig sample of the first body before the checks.
  bool inject_trig_fault = false;
  std::vector<NamedBody> bodies = shipped_bodies();
};

struct VerifyFailure {
  std::string invariant;
  std::string body;
  double value = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct VerifyReport {
  int checks_passed = 0;
  std::vector<VerifyFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Runs the invariant suites of every module and stops at the first failure.
/// Progress lines go to `log` when given.
VerifyReport run_verify(const VerifyOptions& options, std::ostream* log = nullptr);

/// {"ok":..,"checks_passed":..,"failures":[{"invariant":..,"body":..,...}]}
std::string report_json(const VerifyReport& report);

}  // namespace fiso
