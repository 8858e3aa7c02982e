#pragma once

#include <map>
#include <vector>

#include "delta/core/errors.hpp"
#include "delta/core/rational.hpp"

namespace delta {

class MalformedSystem : public Error {
 public:
  using Error::Error;
};

// Each equation reads E = 0.
struct DiffEquationSystem {
  std::vector<RationalExpr> equations;
  std::vector<Indeterminate> variables;
};

// Coefficients of v, v', v'', ... ; trailing zeros trimmed.
using Operator = std::vector<RationalExpr>;
using OperatorMap = std::map<Indeterminate, Operator>;

// sum over lhs = sum over rhs, coefficients free of dependent variables.
struct LinearEquation {
  OperatorMap lhs, rhs;

  // Coefficient in lhs - rhs.
  RationalExpr coefficient(Indeterminate v, unsigned k) const;
  // Highest derivative of v with a nonzero coefficient, -1 if absent.
  int order(Indeterminate v) const;
  std::vector<Indeterminate> variables() const;
  // lhs - rhs as a single expression.
  RationalExpr expression() const;
};

struct LinearDiffSystem {
  std::vector<LinearEquation> equations;
  std::vector<Indeterminate> variables;
};

void trim(Operator& op);
void add_term(OperatorMap& side, Indeterminate v, unsigned k, const RationalExpr& c);

// Splits lhs and rhs, each linear in `vars`, into operator form.
LinearEquation linear_equation(const RationalExpr& lhs, const RationalExpr& rhs,
                               const std::vector<Indeterminate>& vars);

}  // namespace delta
