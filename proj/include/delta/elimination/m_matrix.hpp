#pragma once

#include <vector>

#include "delta/core/rational.hpp"

namespace delta {

struct MEntry {
  int i = 0, j = 0;
  // Highest derivative of a_l in the numerator, -1 if absent.
  int order = -1;
  bool nonzero = false;
  RationalExpr value;
};

struct MMatrixReport {
  int h = 0;
  Indeterminate a_l, b_l, bt;
  RationalExpr m0;
  // m[i] = M_i for 1 <= i <= h-1 (m[0] unused).
  std::vector<RationalExpr> m;
  std::vector<MEntry> entries;
  // Every entry nonzero with order i+j-1.
  bool claim_holds = false;
};

// Builds M_0, M_i from a_l, b_l and b~_{l-1}, taken as independent free
// symbols, and triangularizes by the recursion
// M_{i,j} = M_i - (M_0/M_{1,j-1}) M_{i+1,j-1}. Throws DegenerateSubstitution
// when a pivot M_{1,j-1} vanishes. Needs h >= 2.
MMatrixReport m_matrix_report(int h, Indeterminate a_l, Indeterminate b_l, Indeterminate bt);
MMatrixReport m_matrix_report(int h);

}  // namespace delta
