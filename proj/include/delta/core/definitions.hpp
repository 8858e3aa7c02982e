#pragma once

#include <string_view>

#include "delta/core/rational.hpp"

namespace delta {

// Registers a defined symbol under the first unused name stem, stem1, stem2, ...
Indeterminate define_symbol(std::string_view stem, const RationalExpr& definition);
const RationalExpr& definition_of(Indeterminate k);

// Replaces every K^(j) by the j-th derivative of K's definition, one level deep.
RationalExpr unfold_once(const RationalExpr& e);

// Rewrites over dependent and free symbols only. Subject to the term cap;
// results and failures are memoized per symbol.
RationalExpr expand_definitions(const RationalExpr& e);
RationalExpr expand_symbol(DerivativeSymbol s);

}  // namespace delta
