#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "delta/elimination/reduce.hpp"
#include "delta/frontend/parser.hpp"
#include "json.hpp"

namespace delta {

class UnknownScenario : public Error {
 public:
  using Error::Error;
};

enum class ScenarioStatus { pass, fail, degenerate_as_expected };
std::string_view to_string(ScenarioStatus s);

struct Assertion {
  std::string description;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct ScenarioResult {
  std::string name;
  ScenarioStatus status = ScenarioStatus::fail;
  ReductionTrace trace;
  std::vector<Assertion> assertions;
  // Comparisons that are recorded but not asserted.
  std::vector<std::string> log;
  double seconds = 0;
};

struct ScenarioOptions {
  CertifyOptions certify;
};

// Registered names: lemma32, jfun, sec5, thm41-matrix, generic. The generic
// scenario takes "h m" (free coefficients) or "h m d" (tangent system of the
// generic polynomial of order h and degree d).
std::vector<std::string> scenario_names();
ScenarioResult run_scenario(std::string_view name, const std::vector<std::string>& args = {},
                            const ScenarioOptions& opts = {});

// Textual inputs bundled with the scenarios.
struct ScenarioSource {
  std::string name;
  std::string text;
};
const std::vector<ScenarioSource>& scenario_sources();

// Items of the form lhs = rhs, linear in the declared variables.
LinearDiffSystem linear_system(const ParsedDocument& doc);

// Fully free system: sum_i b{i}_1 z1^(i) = sum_i b{i}_j zj^(i), j = 2..m.
LinearDiffSystem free_initial_system(unsigned h, unsigned m);

std::string scenario_report(const ScenarioResult& r);
nlohmann::ordered_json scenario_json(const ScenarioResult& r);

}  // namespace delta
