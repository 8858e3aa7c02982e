#include "delta/core/zero_test.hpp"

#include <algorithm>
#include <optional>

#include "delta/core/definitions.hpp"
#include "delta/core/errors.hpp"
#include "delta/core/jet.hpp"
#include "delta/core/limits.hpp"

namespace delta {

namespace {

// Names refer only to earlier names, so the largest id is never inside
// another definition still present.
RationalExpr unfold_newest(const RationalExpr& e) {
  std::optional<Indeterminate> newest;
  for (auto s : e.symbols())
    if (s.base.is_defined() && (!newest || s.base.id() > newest->id())) newest = s.base;
  return substitute_symbols(e, [&](DerivativeSymbol s) -> std::optional<RationalExpr> {
    if (s.base != *newest) return std::nullopt;
    return derive_rational(definition_of(s.base), s.order);
  });
}

}  // namespace

bool is_zero(const RationalExpr& e) {
  if (e.formally_zero()) return true;
  // Base symbols are algebraically independent, so a nonzero numerator is nonzero.
  if (!e.has_kind(IndeterminateKind::defined)) return false;
  if (random_nonzero_witness(e, 3, 0x2E80F1ull)) return false;
  Limits l = limits();
  l.max_terms = std::min(l.max_terms, kZeroTestExpansionTerms);
  ScopedLimits guard(l);
  // Differences of a name and its definition cancel once the newest names
  // are unfolded, long before the full expansion fits under the cap.
  try {
    RationalExpr u = e;
    for (int n = 0; n < kZeroTestUnfoldSteps && u.has_kind(IndeterminateKind::defined); ++n) {
      u = unfold_newest(u);
      if (u.formally_zero()) return true;
    }
  } catch (const ResourceLimit&) {
  }
  try {
    return expand_definitions(e).formally_zero();
  } catch (const ResourceLimit&) {
    throw ResourceLimit("zero test undecided: no witness found and expansion exceeds the cap");
  }
}

bool equal_exact(const RationalExpr& a, const RationalExpr& b) {
  if (a == b) return true;
  return is_zero(a - b);
}

}  // namespace delta
