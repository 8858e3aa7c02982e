#pragma once

#include <optional>
#include <string>
#include <vector>

#include "delta/elimination/substitution.hpp"

namespace delta {

struct OracleResult {
  bool ok = true;
  std::vector<std::string> mismatches;
};

// Substitutes into each equation of `before` as a single expression with the
// core substitution, and compares every coefficient with `after`. Symbols in
// `unfold` (named while producing `after`) are replaced by their definitions.
// When `removed` is set, that equation must vanish identically and is absent
// from `after`.
OracleResult substitution_oracle_check(const LinearDiffSystem& before, const LinearSubstitution& s,
                                       const LinearDiffSystem& after, const std::vector<Indeterminate>& unfold = {},
                                       std::optional<std::size_t> removed = std::nullopt);

// Applies the inverse substitution to `after` and compares with `before`.
OracleResult round_trip_check(const LinearDiffSystem& before, const LinearSubstitution& s,
                              const LinearDiffSystem& after, const std::vector<Indeterminate>& unfold = {});

}  // namespace delta
