#include "delta/core/definitions.hpp"

#include <map>
#include <mutex>

#include "delta/core/errors.hpp"
#include "delta/core/limits.hpp"

namespace delta {
namespace {

struct ExpansionCache {
  std::recursive_mutex mutex;
  std::map<std::uint32_t, RationalExpr> done;
  // Smallest term cap at which expansion of the symbol is known to fail.
  std::map<std::uint32_t, std::size_t> failed_below;
};

ExpansionCache& cache() {
  static ExpansionCache c;
  return c;
}

}  // namespace

Indeterminate define_symbol(std::string_view stem, const RationalExpr& definition) {
  for (unsigned i = 0;; ++i) {
    std::string name(stem);
    if (i > 0) name += std::to_string(i);
    if (Indeterminate::find(name)) continue;
    return Indeterminate::define(name, std::make_shared<const RationalExpr>(definition));
  }
}

const RationalExpr& definition_of(Indeterminate k) {
  const auto& d = k.definition();
  if (!d) throw Error("'" + k.name() + "' is not a defined symbol");
  return *d;
}

RationalExpr unfold_once(const RationalExpr& e) {
  return substitute_symbols(e, [](DerivativeSymbol s) -> std::optional<RationalExpr> {
    if (!s.base.is_defined()) return std::nullopt;
    return derive_rational(definition_of(s.base), s.order);
  });
}

RationalExpr expand_symbol(DerivativeSymbol s) {
  if (!s.base.is_defined()) return RationalExpr::symbol(s.base, s.order);
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  auto key = s.key();
  if (auto it = c.done.find(key); it != c.done.end()) return it->second;
  std::size_t cap = limits().max_terms;
  if (auto it = c.failed_below.find(key); it != c.failed_below.end() && cap <= it->second)
    throw ResourceLimit("expansion of " + s.base.name() + " exceeds the term cap");
  try {
    RationalExpr r = s.order == 0 ? expand_definitions(definition_of(s.base))
                                  : derive_rational(expand_symbol(DerivativeSymbol(s.base, s.order - 1)));
    check_term_cap(r.size());
    c.done.emplace(key, r);
    return r;
  } catch (const ResourceLimit&) {
    auto& f = c.failed_below[key];
    f = std::max(f, cap);
    throw;
  }
}

RationalExpr expand_definitions(const RationalExpr& e) {
  if (!e.has_kind(IndeterminateKind::defined)) return e;
  return substitute_symbols(e, [](DerivativeSymbol s) -> std::optional<RationalExpr> {
    if (!s.base.is_defined()) return std::nullopt;
    return expand_symbol(s);
  });
}

}  // namespace delta
