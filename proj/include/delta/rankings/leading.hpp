#pragma once

#include "delta/core/rational.hpp"
#include "delta/rankings/ranking.hpp"

namespace delta {

class TargetAbsent : public Error {
 public:
  using Error::Error;
};

class CertificationFailed : public Error {
 public:
  using Error::Error;
};

// e == initial * leader^degree + remainder.
struct LeadingData {
  DerivativeSymbol leader;
  std::uint32_t degree = 0;
  RationalExpr initial;
  RationalExpr remainder;
};

// Highest k such that target^(k) can occur in e, reading defined symbols
// through their definitions (K^(j) contributes order(K) + j). -1 if absent.
int structural_order(const RationalExpr& e, Indeterminate target);
int structural_order(DerivativeSymbol s, Indeterminate target);

// d e / d target^(k) by the chain rule, with dK/d target^(top) named by
// initial_symbol. Valid when k is the structural order of e.
RationalExpr structural_initial(const RationalExpr& e, Indeterminate target, int k);
Indeterminate initial_symbol(Indeterminate defined, Indeterminate target);

// Free indeterminates reachable from e through definitions.
std::vector<Indeterminate> free_support(const RationalExpr& e);

// Without defined symbols the numerator is used directly. With them, the
// leader is target^(k) for the structural order k, the initial comes from the
// chain rule and must be exactly nonzero; a nonlinear top falls back to
// expansion within the cap.
LeadingData leading_term_wrt(const RationalExpr& e, Indeterminate target, const Ranking& r);

}  // namespace delta
