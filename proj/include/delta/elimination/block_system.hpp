#pragma once

#include <optional>
#include <string>
#include <vector>

#include "delta/elimination/reduce.hpp"

namespace delta {

// One lower equation: sum c_i u^(i) + sum e_i z^(i) = sum beta_i w^(i).
struct LowerBlock {
  Indeterminate w;
  Operator c, e, beta;
};

// Top equation sum a_i u^(i) = sum b_i z^(i) over a list of lower equations.
struct BlockSystem {
  Indeterminate u, z;
  Operator a, b;
  std::vector<LowerBlock> lower;

  // Top order: highest u-derivative on the left.
  int ell() const;
  // Ambient order: highest w-derivative over the lower equations.
  int h() const;
  LinearDiffSystem to_system() const;
  // Reads the first equation as the top one (u on the left, z on the right).
  static BlockSystem from_system(const LinearDiffSystem& sys);
};

class DegenerateSubstitution : public Error {
 public:
  DegenerateSubstitution(std::string coefficient, int stage)
      : Error("degenerate substitution: " + coefficient + " vanishes"), coefficient(std::move(coefficient)),
        stage(stage) {}
  std::string coefficient;
  // Index of the Algorithm A application (0-based) in which it occurred.
  int stage;
};

// Printed closed forms for the coefficients produced by each substitution of
// the trio, evaluated from the coefficients before the step.
struct FormulaValue {
  std::string coefficient;
  std::string formula;
  std::size_t equation = 0;
  Indeterminate variable;
  unsigned order = 0;
  RationalExpr value;
};

// u = u~ + (b_l/a_l) z: b~_i on the top, d_i on each lower equation. The
// variable names refer to the system after the step.
std::vector<FormulaValue> sub1_formulas(const BlockSystem& s, Indeterminate u_new);
// w = w~ + (d_h/beta_h) z on lower equation j: e~_i.
std::vector<FormulaValue> sub2_formulas(const BlockSystem& s, std::size_t j);
// z = z~ + (a_l/b~_{l-1}) u': a~_i on the top, c~_i below.
std::vector<FormulaValue> sub3_formulas(const BlockSystem& s);
// z = (a~_0/b~_0) u: c^_i below.
std::vector<FormulaValue> bsolve_formulas(const BlockSystem& s);

struct BlockRun {
  BlockSystem system;
  ReductionTrace trace;
};

// Each applies one substitution of Algorithm A by direct substitution and
// records the closed-form comparison in the trace. Throw DegenerateSubstitution
// when the denominator vanishes.
BlockRun alg_a_sub1(const BlockSystem& s, const ReduceOptions& opts = {});
BlockRun alg_a_sub2(const BlockSystem& s, const ReduceOptions& opts = {});
BlockRun alg_a_sub3(const BlockSystem& s, const ReduceOptions& opts = {});

// Algorithm A l times, then z = (a~_0/b~_0) u. Steps are A1, A2 (once per
// lower equation), A3 per order, and the final solve.
BlockRun alg_b(const BlockSystem& s, const ReduceOptions& opts = {});

struct EqChReport {
  bool applicable = false;
  bool equal = false;
  RationalExpr formula;
  RationalExpr direct;
};

// Compares the printed closed form of c~_h after one full trio with direct
// substitution. Needs h >= 2 and a single lower equation.
EqChReport eq_ch_report(const BlockSystem& s, const ReduceOptions& opts = {});
inline bool verify_eq_ch(const BlockSystem& s, const ReduceOptions& opts = {}) { return eq_ch_report(s, opts).equal; }

}  // namespace delta
