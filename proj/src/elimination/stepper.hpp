#pragma once

// Shared machinery for reduce_to_line and the block operations.

#include <optional>
#include <string>
#include <vector>

#include "delta/core/jet.hpp"
#include "delta/elimination/block_system.hpp"

namespace delta::detail {

// Coefficient on whichever side v occurs (zero when absent).
RationalExpr side_coefficient(const LinearEquation& eq, Indeterminate v, unsigned k);
Operator side_operator(const LinearEquation& eq, Indeterminate v);
// The single variable on a side, if there is exactly one.
std::optional<Indeterminate> sole_variable(const OperatorMap& side);

// x = fresh + lambda y^(ord_y - ord_x), cancelling y^(ord_y) in eq.
LinearSubstitution cancelling_substitution(const LinearEquation& eq, Indeterminate x, int ord_x, Indeterminate y,
                                           int ord_y, Indeterminate fresh);
// Solves eq for z, whose only derivative in eq is z itself.
LinearSubstitution solving_substitution(const LinearEquation& eq, Indeterminate z);

// Exact zero test with a cached jet point for the common nonzero case.
class ZeroChecker {
 public:
  explicit ZeroChecker(std::uint64_t seed) : eval_(JetSampler(seed, 0x5eed)) {}
  // Throws ResourceLimit when undecided.
  bool is_zero(const RationalExpr& e);
  // Nullopt when undecided.
  std::optional<bool> equal(const RationalExpr& a, const RationalExpr& b);

 private:
  JetEvaluator eval_;
};

struct Dropped {
  std::size_t equation;
  Indeterminate variable;
  unsigned order;
  RationalExpr value;
};

class Stepper {
 public:
  Stepper(const LinearDiffSystem& initial, const ReduceOptions& opts, ReductionTrace& trace);

  const LinearDiffSystem& current() const { return cur_; }
  ZeroChecker& zero() { return zero_; }
  // Zero coefficients removed while producing the current system.
  const std::vector<Dropped>& dropped() const { return dropped_; }

  // Certifies the denominator, substitutes, drops zeros, compares the
  // formulas, names coefficients and runs the oracle.
  ReductionStep& apply(StepKind kind, std::size_t equation, LinearSubstitution s, RationalExpr denominator,
                       bool removes, bool detour = false, const std::vector<FormulaValue>& formulas = {});

  Indeterminate fresh(Indeterminate x) const;
  // Names large coefficients of the starting system (step 0).
  void name_initial();

 private:
  bool needs_name(const RationalExpr& c) const;
  std::vector<Indeterminate> name_coefficients(LinearDiffSystem& sys, std::size_t step);
  void compare_formulas(const LinearDiffSystem& raw, const std::vector<FormulaValue>& formulas);

  const ReduceOptions& opts_;
  ReductionTrace& trace_;
  LinearDiffSystem cur_;
  ZeroChecker zero_;
  std::vector<Dropped> dropped_;
  std::string stem_;
};

}  // namespace delta::detail
