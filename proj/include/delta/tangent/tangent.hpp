#pragma once

#include <map>
#include <optional>
#include <string>

#include "delta/tangent/system.hpp"

namespace delta {

// Equations f(x_j) - y = 0, j = 1..m, on fresh dependent variables
// <x>1..<x>m and y. When `inhomogeneity` is given, its terms are dropped from
// f first (it is the constant that y replaces).
DiffEquationSystem build_Vm(const RationalExpr& f, Indeterminate x, unsigned m,
                            std::optional<Indeterminate> inhomogeneity = std::nullopt,
                            const std::string& y_name = "y");

// Linearization at point: each variable in `point` is replaced by its free
// indeterminate after taking partials. Tangent variables are named by
// `names`, defaulting to d<var> for point variables and the variable itself
// otherwise. Terms of point variables go on the left, the rest on the right.
LinearDiffSystem diff_tangent_system(const DiffEquationSystem& sys, const std::map<Indeterminate, Indeterminate>& point,
                                     const std::map<Indeterminate, std::string>& names = {});

// From lhs_k = y for all k: the m-1 equations lhs_1 = lhs_{k+1}.
LinearDiffSystem eliminate_y(const LinearDiffSystem& sys, Indeterminate y);

}  // namespace delta
