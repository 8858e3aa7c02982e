#include "delta/elimination/oracle.hpp"

#include <algorithm>
#include <set>

#include "delta/core/errors.hpp"
#include "delta/core/format.hpp"
#include "delta/core/zero_test.hpp"

namespace delta {
namespace {

RationalExpr unfold_selected(const RationalExpr& e, const std::set<Indeterminate>& names) {
  if (names.empty()) return e;
  return substitute_symbols(e, [&](DerivativeSymbol s) -> std::optional<RationalExpr> {
    if (!names.count(s.base)) return std::nullopt;
    return derive_rational(*s.base.definition(), s.order);
  });
}

bool same(const RationalExpr& a, const RationalExpr& b, std::string& why) {
  if (a == b) return true;
  try {
    return equal_exact(a, b);
  } catch (const ResourceLimit& e) {
    why = std::string(" (undecided: ") + e.what() + ")";
    return false;
  }
}

std::vector<Indeterminate> all_variables(std::initializer_list<const LinearDiffSystem*> systems,
                                         const LinearSubstitution& s) {
  std::vector<Indeterminate> v;
  for (const auto* sys : systems) v.insert(v.end(), sys->variables.begin(), sys->variables.end());
  v.push_back(s.variable);
  if (s.fresh) v.push_back(*s.fresh);
  for (const auto& [x, op] : s.terms) v.push_back(x);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void compare_equation(const LinearEquation& expected, const LinearEquation& actual, const std::set<Indeterminate>& unfold_e,
                      const std::set<Indeterminate>& unfold_a, std::size_t index, OracleResult& r) {
  std::set<std::pair<Indeterminate, unsigned>> keys;
  for (const auto* eq : {&expected, &actual})
    for (const auto* side : {&eq->lhs, &eq->rhs})
      for (const auto& [v, op] : *side)
        for (std::size_t k = 0; k < op.size(); ++k) keys.emplace(v, static_cast<unsigned>(k));
  for (const auto& [v, k] : keys) {
    RationalExpr want = unfold_selected(expected.coefficient(v, k), unfold_e);
    RationalExpr got = unfold_selected(actual.coefficient(v, k), unfold_a);
    std::string why;
    if (!same(want, got, why)) {
      r.ok = false;
      r.mismatches.push_back("equation " + std::to_string(index + 1) + ", coefficient of " +
                             to_string(DerivativeSymbol(v, k)) + ": expected " + to_string(want) + ", got " +
                             to_string(got) + why);
    }
  }
}

}  // namespace

OracleResult substitution_oracle_check(const LinearDiffSystem& before, const LinearSubstitution& s,
                                       const LinearDiffSystem& after, const std::vector<Indeterminate>& unfold,
                                       std::optional<std::size_t> removed) {
  OracleResult r;
  std::set<Indeterminate> names(unfold.begin(), unfold.end());
  auto vars = all_variables({&before, &after}, s);
  std::size_t expected_count = before.equations.size() - (removed ? 1 : 0);
  if (after.equations.size() != expected_count) {
    r.ok = false;
    r.mismatches.push_back("equation count differs");
    return r;
  }
  RationalExpr replacement = s.expression();
  for (std::size_t i = 0; i < before.equations.size(); ++i) {
    RationalExpr o = substitute(before.equations[i].expression(), s.variable, replacement);
    if (removed && *removed == i) {
      std::string why;
      if (!same(o, RationalExpr(), why)) {
        r.ok = false;
        r.mismatches.push_back("solved equation does not vanish" + why);
      }
      continue;
    }
    std::size_t j = removed && i > *removed ? i - 1 : i;
    compare_equation(linear_equation(o, RationalExpr(), vars), after.equations[j], {}, names, j, r);
  }
  return r;
}

OracleResult round_trip_check(const LinearDiffSystem& before, const LinearSubstitution& s,
                              const LinearDiffSystem& after, const std::vector<Indeterminate>& unfold) {
  OracleResult r;
  std::set<Indeterminate> names(unfold.begin(), unfold.end());
  auto inv = s.inverse();
  auto vars = all_variables({&before, &after}, s);
  if (before.equations.size() != after.equations.size()) {
    r.ok = false;
    r.mismatches.push_back("equation count differs");
    return r;
  }
  RationalExpr replacement = inv.expression();
  for (std::size_t i = 0; i < after.equations.size(); ++i) {
    RationalExpr o = substitute(after.equations[i].expression(), inv.variable, replacement);
    compare_equation(before.equations[i], linear_equation(o, RationalExpr(), vars), {}, names, i, r);
  }
  return r;
}

}  // namespace delta
