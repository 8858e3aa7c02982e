#pragma once

#include "delta/core/rational.hpp"

namespace delta {

// Exact: formal zero, then (only when defined symbols occur) a nonzero exact
// jet value proves nonzero, then unfolding the newest names one at a time,
// then full expansion decides. Throws ResourceLimit when neither a witness nor
// an expansion within the cap is found.
bool is_zero(const RationalExpr& e);
inline bool is_zero(const DiffPolynomial& p) { return p.is_zero(); }
bool equal_exact(const RationalExpr& a, const RationalExpr& b);

// Cap used for the expansion fallback of is_zero.
inline constexpr std::size_t kZeroTestExpansionTerms = 200'000;
// Names unfolded one at a time before the full expansion.
inline constexpr int kZeroTestUnfoldSteps = 8;

}  // namespace delta
