#include "doctest.h"

#include "delta/core/format.hpp"
#include "delta/frontend/parser.hpp"
#include "delta/frontend/printer.hpp"
#include "delta/frontend/scenarios.hpp"
#include "delta/frontend/trace_json.hpp"
#include "support/generators.hpp"

using namespace delta;

namespace {

bool same_system(const LinearDiffSystem& a, const LinearDiffSystem& b) {
  if (a.equations.size() != b.equations.size()) return false;
  for (std::size_t i = 0; i < a.equations.size(); ++i)
    if (!(a.equations[i].lhs == b.equations[i].lhs) || !(a.equations[i].rhs == b.equations[i].rhs)) return false;
  return true;
}

LinearDiffSystem reparse(const LinearDiffSystem& sys) {
  std::string text = preamble(sys);
  for (const auto& line : to_strings(sys)) text += line + "\n";
  return linear_system(parse_document(text));
}

}  // namespace

TEST_CASE("printed polynomials and fractions parse back to the same value") {
  parse_document("free: fa fb; vars: fx fy;");
  std::vector<Indeterminate> xs;
  for (const char* n : {"fa", "fb", "fx", "fy"}) xs.push_back(*Indeterminate::find(n));
  testing::Gen g(51);
  for (int n = 0; n < 300; ++n) {
    auto e = g.rational_expr(xs, 5, 3, 4);
    auto text = to_string(e);
    auto back = parse_expression(text);
    CHECK(back == e);
    CHECK(to_string(back) == text);
  }
}

TEST_CASE("equation printer handles signs, unit coefficients and empty sides") {
  auto sys = linear_system(parse_document("free: pa; vars: pu pv; -pu'' + 3/2*pu = pa*pv' - pv"));
  CHECK(to_string(sys.equations[0]) == "-pu'' + 3/2*pu = pa*pv' - pv");
  LinearEquation empty;
  CHECK(to_string(empty) == "0 = 0");
  CHECK(same_system(reparse(sys), sys));
}

TEST_CASE("empty trace serializes with an outcome") {
  ReductionTrace t;
  auto j = trace_json(t);
  CHECK(j["steps"].is_array());
  CHECK(j["steps"].empty());
  CHECK(j.contains("outcome"));
  CHECK(j["outcome"]["kind"] == "bijection-with-line");
  auto keys = std::vector<std::string>();
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys.front() == "system_initial");
  CHECK_FALSE(emit_trace(t, TraceFormat::text).empty());
}

TEST_CASE("four-operator chain trace has fourteen certified steps") {
  auto r = run_scenario("lemma32");
  CHECK(r.status == ScenarioStatus::pass);
  auto j = trace_json(r.trace);
  REQUIRE(j["steps"].size() == 14);
  for (const auto& s : j["steps"]) {
    CHECK(s.contains("certificate"));
    CHECK(s["certificate"].contains("method"));
  }
  // Every printed snapshot re-canonicalizes identically.
  for (const auto& snap : r.trace.snapshots) CHECK(same_system(reparse(snap), snap));
  CHECK(j["discrepancies"].size() == r.trace.discrepancies.size());
}

TEST_CASE("scenario statuses") {
  CHECK(run_scenario("sec5").status == ScenarioStatus::pass);
  auto j = run_scenario("jfun");
  CHECK(j.status == ScenarioStatus::degenerate_as_expected);
  bool a2 = false;
  for (const auto& a : j.assertions) a2 |= a.description == "A2 = 3 A3'" && a.pass;
  CHECK(a2);
  CHECK_THROWS_AS(run_scenario("no-such-scenario"), UnknownScenario);
  auto bad = run_scenario("generic", {"2"});
  CHECK(bad.status == ScenarioStatus::fail);
  for (const auto& r : {j}) CHECK_FALSE(r.assertions.empty());
}

TEST_CASE("bundled sources parse") {
  for (const auto& s : scenario_sources()) {
    auto doc = parse_document(s.text);
    CHECK_FALSE(doc.items.empty());
  }
}

TEST_CASE("scenario JSON carries assertions") {
  auto r = run_scenario("sec5");
  auto j = scenario_json(r);
  CHECK(j["status"] == "pass");
  CHECK(j["assertions"].size() == r.assertions.size());
  CHECK(j["trace"]["steps"].size() == 2);
}
