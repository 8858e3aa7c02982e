#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "delta/elimination/substitution.hpp"
#include "delta/rankings/certificate.hpp"

namespace delta {

// A1: u = u~ + lambda z^(q-p) lowering the top z-order.
// A2: w = w~ + nu z^(q-h) lowering the z-order of a lower equation.
// A3: z = z~ + mu u^(p-q) lowering the top u-order.
// B_solve / direct_solve: the top equation has z-order 0 and is solved for z
// (B_solve when its u-order is 0 as well).
enum class StepKind { A1, A2, A3, B_solve, direct_solve };
std::string_view to_string(StepKind k);

struct ReductionStep {
  StepKind kind = StepKind::A1;
  std::size_t equation = 0;
  LinearSubstitution substitution;
  RationalExpr denominator;
  NonzeroCertificate certificate;
  bool removes_equation = false;
  // Alternative substitution taken after a vanished denominator.
  bool detour = false;
  // Coefficients named while producing the system after this step.
  std::vector<Indeterminate> definitions;
};

// A block formula that disagrees with direct substitution.
struct Discrepancy {
  std::string coefficient;
  std::string formula;
  RationalExpr formula_value;
  RationalExpr direct_value;
};

enum class OutcomeKind { bijection_with_line, degenerate };

struct Outcome {
  OutcomeKind kind = OutcomeKind::bijection_with_line;
  // Final first-order (or higher) equation A(u) = b0 z and the variables it links.
  LinearEquation final_equation;
  Indeterminate determined;  // z, recovered from u
  Indeterminate parameter;   // u
  // Degenerate: which block coefficient vanished, and its unsimplified form.
  std::string coefficient;
  std::string vanished_expression;
  RationalExpr vanished_value;
  std::size_t step = 0;
  // After a degenerate pivot the alternative substitution was taken and the
  // reduction still reached a final equation.
  bool recovered = false;
};

struct ReductionTrace {
  LinearDiffSystem initial;
  std::vector<ReductionStep> steps;
  std::vector<LinearDiffSystem> snapshots;
  std::vector<Indeterminate> definitions;
  Outcome outcome;
  std::vector<Discrepancy> discrepancies;
  std::size_t closed_form_checks = 0;
  std::size_t oracle_checks = 0;
  std::vector<std::string> oracle_failures;
  std::vector<std::string> notes;
  bool certificates_rechecked = false;
  bool certificates_ok = false;
};

struct ReduceOptions {
  CertifyOptions certify;
  // Lower the top u-order before solving even when the z-order is already 0.
  bool strict_algorithm_b = false;
  // Coefficients with a denominator or more terms than this get a name.
  std::size_t naming_threshold = 3;
  std::string name_prefix = "K";
  bool oracle = true;
  bool closed_forms = true;
  bool recheck = true;
};

ReductionTrace reduce_to_line(const LinearDiffSystem& sys, const ReduceOptions& opts = {});

// Re-verifies every certificate of the trace against its denominator.
bool recheck_trace(const ReductionTrace& t);

}  // namespace delta
