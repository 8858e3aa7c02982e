#pragma once

#include <optional>
#include <string>

#include "delta/tangent/system.hpp"

namespace delta {

// variable = fresh + sum_{(v,k)} terms[v][k] * v^(k). Without `fresh` this
// solves for `variable` outright.
struct LinearSubstitution {
  Indeterminate variable;
  std::optional<Indeterminate> fresh;
  OperatorMap terms;

  RationalExpr expression() const;
  // fresh = variable - terms; requires `fresh`.
  LinearSubstitution inverse() const;
};

// Direct substitution, differentiating the coefficients by Leibniz' rule.
// A variable stays on the side where it already occurred; new variables go
// to the side of the replaced one.
LinearEquation apply_substitution(const LinearEquation& eq, const LinearSubstitution& s);
LinearDiffSystem apply_substitution(const LinearDiffSystem& sys, const LinearSubstitution& s);

// x0 -> x1 -> x2 ...; skips names taken by other kinds or listed in `avoid`.
Indeterminate fresh_variable(Indeterminate x, const std::vector<Indeterminate>& avoid);

}  // namespace delta
