#include "finsler_iso/verify.hpp"

#include <doctest.h>

#include <json.hpp>

using namespace fiso;

TEST_CASE("fast verification passes on the shipped bodies") {
  VerifyOptions opt;
  const VerifyReport r = run_verify(opt);
  CHECK(r.ok());
  CHECK(r.checks_passed > 100);
}

TEST_CASE("an injected trig fault is named") {
  VerifyOptions opt;
  opt.inject_trig_fault = true;
  const VerifyReport r = run_verify(opt);
  REQUIRE_FALSE(r.ok());
  CHECK(r.failures.front().invariant == "convex_trig.samples_on_boundary");
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["ok"] == false);
  CHECK(j["failures"][0]["invariant"] == "convex_trig.samples_on_boundary");
}
