#include "delta/rankings/leading.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "delta/core/definitions.hpp"
#include "delta/core/limits.hpp"
#include "delta/core/zero_test.hpp"

namespace delta {
namespace {

std::recursive_mutex& memo_mutex() {
  static std::recursive_mutex m;
  return m;
}

std::map<std::pair<std::uint32_t, std::uint32_t>, int>& order_memo() {
  static std::map<std::pair<std::uint32_t, std::uint32_t>, int> m;
  return m;
}

std::map<std::pair<std::uint32_t, std::uint32_t>, Indeterminate>& initial_memo() {
  static std::map<std::pair<std::uint32_t, std::uint32_t>, Indeterminate> m;
  return m;
}

std::map<std::uint32_t, std::vector<Indeterminate>>& support_memo() {
  static std::map<std::uint32_t, std::vector<Indeterminate>> m;
  return m;
}

int defined_order(Indeterminate k, Indeterminate target) {
  std::lock_guard lock(memo_mutex());
  auto key = std::make_pair(k.id(), target.id());
  if (auto it = order_memo().find(key); it != order_memo().end()) return it->second;
  int v = structural_order(definition_of(k), target);
  order_memo().emplace(key, v);
  return v;
}

LeadingData leading_polynomial_form(const RationalExpr& e, Indeterminate target) {
  const auto& num = e.num();
  int k = num.order_of(target);
  if (k < 0) {
    if (e.den().order_of(target) >= 0)
      throw TargetAbsent("'" + target.name() + "' occurs only in the denominator");
    throw TargetAbsent("'" + target.name() + "' does not occur");
  }
  DerivativeSymbol l(target, static_cast<std::uint32_t>(k));
  std::uint32_t d = num.degree_in(l);
  DiffPolynomial c = num.coefficient(l, d);
  DiffPolynomial rest = num - c * DiffPolynomial::monomial(Monomial(l, d));
  return {l, d, RationalExpr(c, e.den()), RationalExpr(rest, e.den())};
}

LeadingData leading_by_expansion(const RationalExpr& e, Indeterminate target) {
  Limits l = limits();
  l.max_terms = std::min(l.max_terms, kZeroTestExpansionTerms);
  ScopedLimits guard(l);
  try {
    return leading_polynomial_form(expand_definitions(e), target);
  } catch (const ResourceLimit&) {
    throw CertificationFailed("leading term of " + target.name() +
                              " is not linear over defined coefficients and expansion exceeds the cap");
  }
}

}  // namespace

int structural_order(DerivativeSymbol s, Indeterminate target) {
  if (s.base == target) return static_cast<int>(s.order);
  if (!s.base.is_defined()) return -1;
  int t = defined_order(s.base, target);
  return t < 0 ? -1 : t + static_cast<int>(s.order);
}

int structural_order(const RationalExpr& e, Indeterminate target) {
  int best = -1;
  for (auto s : e.symbols()) best = std::max(best, structural_order(s, target));
  return best;
}

Indeterminate initial_symbol(Indeterminate k, Indeterminate target) {
  std::lock_guard lock(memo_mutex());
  auto key = std::make_pair(k.id(), target.id());
  if (auto it = initial_memo().find(key); it != initial_memo().end()) return it->second;
  const auto& def = definition_of(k);
  RationalExpr init = structural_initial(def, target, structural_order(def, target));
  Indeterminate sym = define_symbol("d" + k.name() + "_" + target.name(), init);
  initial_memo().emplace(key, sym);
  return sym;
}

RationalExpr structural_initial(const RationalExpr& e, Indeterminate target, int k) {
  RationalExpr total;
  for (auto s : e.symbols()) {
    if (structural_order(s, target) != k) continue;
    RationalExpr ds = partial(e, s);
    if (s.base == target) {
      total += ds;
    } else {
      total += ds * RationalExpr::symbol(initial_symbol(s.base, target));
    }
  }
  return total;
}

std::vector<Indeterminate> free_support(const RationalExpr& e) {
  std::set<Indeterminate> out;
  for (auto x : e.bases()) {
    if (x.is_free()) {
      out.insert(x);
    } else if (x.is_defined()) {
      std::vector<Indeterminate> sub;
      {
        std::lock_guard lock(memo_mutex());
        auto it = support_memo().find(x.id());
        if (it == support_memo().end()) {
          sub = free_support(definition_of(x));
          support_memo().emplace(x.id(), sub);
        } else {
          sub = it->second;
        }
      }
      out.insert(sub.begin(), sub.end());
    }
  }
  return {out.begin(), out.end()};
}

LeadingData leading_term_wrt(const RationalExpr& e, Indeterminate target, const Ranking& r) {
  if (r.kind != RankingKind::elimination || r.priority.empty() || r.priority.front() != target)
    throw std::invalid_argument("leading term needs an elimination ranking with the target highest");
  if (!e.has_kind(IndeterminateKind::defined)) return leading_polynomial_form(e, target);
  int k = structural_order(e, target);
  if (k < 0) throw TargetAbsent("'" + target.name() + "' does not occur");
  RationalExpr init = structural_initial(e, target, k);
  if (structural_order(init, target) >= k || is_zero(init)) return leading_by_expansion(e, target);
  DerivativeSymbol l(target, static_cast<std::uint32_t>(k));
  RationalExpr rest = e - init * RationalExpr::symbol(target, l.order);
  return {l, 1, std::move(init), std::move(rest)};
}

}  // namespace delta
