#include "delta/rankings/ranking.hpp"

#include <algorithm>

namespace delta {
namespace {

std::ptrdiff_t position(const std::vector<Indeterminate>& p, Indeterminate x) {
  auto it = std::find(p.begin(), p.end(), x);
  return it == p.end() ? -1 : it - p.begin();
}

}  // namespace

bool Ranking::ranks(Indeterminate x) const {
  return kind == RankingKind::orderly || position(priority, x) >= 0;
}

std::strong_ordering Ranking::compare(DerivativeSymbol a, DerivativeSymbol b) const {
  auto pa = position(priority, a.base);
  auto pb = position(priority, b.base);
  if (kind == RankingKind::elimination) {
    if (pa < 0) throw UnrankedIndeterminate("'" + a.base.name() + "' is not in the ranking");
    if (pb < 0) throw UnrankedIndeterminate("'" + b.base.name() + "' is not in the ranking");
    if (pa != pb) return pb <=> pa;  // earlier in the list ranks higher
    return a.order <=> b.order;
  }
  if (a.order != b.order) return a.order <=> b.order;
  if (a.base == b.base) return std::strong_ordering::equal;
  if (pa >= 0 && pb >= 0) return pb <=> pa;
  if (pa >= 0) return std::strong_ordering::greater;
  if (pb >= 0) return std::strong_ordering::less;
  // Unlisted: alphabetically earlier ranks higher.
  auto c = a.base.name().compare(b.base.name());
  if (c == 0) return a.base.id() <=> b.base.id();
  return c < 0 ? std::strong_ordering::greater : std::strong_ordering::less;
}

DerivativeSymbol leader(const DiffPolynomial& p, const Ranking& r) {
  auto syms = p.symbols();
  if (syms.empty()) throw ConstantPolynomial("constant polynomial has no leader");
  DerivativeSymbol best = syms[0];
  for (std::size_t i = 1; i < syms.size(); ++i)
    if (r.compare(syms[i], best) > 0) best = syms[i];
  if (r.kind == RankingKind::elimination) (void)r.compare(best, best);
  return best;
}

InitialSeparant initial_and_separant(const DiffPolynomial& p, const Ranking& r) {
  DerivativeSymbol l = leader(p, r);
  std::uint32_t d = p.degree_in(l);
  return {l, d, p.coefficient(l, d), p.partial(l)};
}

}  // namespace delta
