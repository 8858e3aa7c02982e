#include "delta/rankings/certificate.hpp"

#include <algorithm>

#include "delta/core/definitions.hpp"
#include "delta/core/errors.hpp"
#include "delta/core/limits.hpp"

namespace delta {
namespace {

std::optional<RationalExpr> try_expand(const RationalExpr& e, std::size_t max_terms) {
  if (!e.has_kind(IndeterminateKind::defined)) return e;
  Limits l = limits();
  l.max_terms = std::min(l.max_terms, max_terms);
  ScopedLimits guard(l);
  try {
    return expand_definitions(e);
  } catch (const ResourceLimit&) {
    return std::nullopt;
  }
}

std::optional<Indeterminate> latest_free(const RationalExpr& e) {
  auto s = free_support(e);
  std::optional<Indeterminate> best;
  for (auto x : s)
    if (structural_order(e, x) >= 0 && (!best || x.id() > best->id())) best = x;
  return best;
}

NonzeroCertificate leading_chain(const RationalExpr& e, Indeterminate target, const CertifyOptions& opts,
                                 int depth) {
  if (depth >= opts.max_depth) throw CertificationFailed("leading-term recursion exceeds depth cap");
  if (e.formally_zero()) throw CertificationFailed("expression is zero");
  LeadingData ld = leading_term_wrt(e, target, elimination_ranking_for(e, target));
  if (ld.initial.formally_zero()) throw CertificationFailed("initial vanishes");
  NonzeroCertificate c;
  c.method = CertMethod::leading_term;
  c.target = target;
  std::shared_ptr<const NonzeroCertificate> sub;
  if (auto x = certify_nonzero_by_expansion(ld.initial, opts.expansion_terms)) {
    sub = std::make_shared<const NonzeroCertificate>(std::move(*x));
  } else if (auto next = latest_free(ld.initial); next && depth + 1 < opts.max_depth) {
    try {
      sub = std::make_shared<const NonzeroCertificate>(leading_chain(ld.initial, *next, opts, depth + 1));
    } catch (const CertificationFailed&) {
    }
  }
  if (!sub) {
    if (auto w = certify_nonzero_by_jet(ld.initial, opts.jet_trials, opts.seed))
      sub = std::make_shared<const NonzeroCertificate>(std::move(*w));
  }
  if (!sub) throw CertificationFailed("initial could not be certified nonzero");
  c.leading = std::move(ld);
  c.initial_certificate = std::move(sub);
  return c;
}

}  // namespace

std::string_view to_string(CertMethod m) {
  switch (m) {
    case CertMethod::exact_expansion: return "exact-expansion";
    case CertMethod::leading_term: return "leading-term";
    case CertMethod::jet_witness: return "jet-witness";
  }
  return "?";
}

Ranking elimination_ranking_for(const RationalExpr& e, Indeterminate target) {
  auto s = free_support(e);
  std::sort(s.begin(), s.end(), [](Indeterminate a, Indeterminate b) { return a.id() > b.id(); });
  std::vector<Indeterminate> p{target};
  for (auto x : s)
    if (x != target) p.push_back(x);
  return Ranking::elimination(std::move(p));
}

NonzeroCertificate certify_nonzero_by_leading_term(const RationalExpr& e, Indeterminate target,
                                                   const CertifyOptions& opts) {
  return leading_chain(e, target, opts, 0);
}

std::optional<NonzeroCertificate> certify_nonzero_by_expansion(const RationalExpr& e, std::size_t max_terms) {
  auto x = try_expand(e, max_terms);
  if (!x || x->formally_zero()) return std::nullopt;
  NonzeroCertificate c;
  c.method = CertMethod::exact_expansion;
  c.expanded_terms = x->num().size();
  return c;
}

std::optional<NonzeroCertificate> certify_nonzero_by_jet(const RationalExpr& e, int trials, std::uint64_t seed) {
  auto w = random_nonzero_witness(e, trials, seed);
  if (!w) return std::nullopt;
  NonzeroCertificate c;
  c.method = CertMethod::jet_witness;
  c.witness = std::move(*w);
  return c;
}

NonzeroCertificate certify_nonzero(const RationalExpr& e, const CertifyOptions& opts) {
  if (e.formally_zero()) throw CertificationFailed("expression is zero");
  auto by_leading = [&]() -> std::optional<NonzeroCertificate> {
    auto t = latest_free(e);
    if (!t) return std::nullopt;
    try {
      return certify_nonzero_by_leading_term(e, *t, opts);
    } catch (const CertificationFailed&) {
      return std::nullopt;
    } catch (const TargetAbsent&) {
      return std::nullopt;
    }
  };
  std::optional<NonzeroCertificate> c;
  switch (opts.mode) {
    case CertifyMode::exact:
      c = certify_nonzero_by_expansion(e, opts.expansion_terms);
      if (!c) c = by_leading();
      break;
    case CertifyMode::leading:
      c = by_leading();
      if (!c) c = certify_nonzero_by_expansion(e, opts.expansion_terms);
      break;
    case CertifyMode::jet:
      break;
  }
  if (!c) c = certify_nonzero_by_jet(e, opts.jet_trials, opts.seed);
  if (!c) throw CertificationFailed("no certificate of nonvanishing found");
  return std::move(*c);
}

bool recheck(const NonzeroCertificate& c, const RationalExpr& e) {
  if (e.formally_zero()) return false;
  switch (c.method) {
    case CertMethod::exact_expansion: {
      auto x = try_expand(e, limits().max_terms);
      return x && !x->formally_zero();
    }
    case CertMethod::jet_witness: {
      if (!c.witness) return false;
      try {
        return jet_eval(e, *c.witness) != 0;
      } catch (const DenominatorVanished&) {
        return false;
      } catch (const Error&) {
        return false;
      }
    }
    case CertMethod::leading_term: {
      if (!c.target || !c.leading || !c.initial_certificate) return false;
      try {
        auto ld = leading_term_wrt(e, *c.target, elimination_ranking_for(e, *c.target));
        if (ld.leader != c.leading->leader || ld.degree != c.leading->degree || ld.degree == 0) return false;
        if (!(ld.initial == c.leading->initial)) return false;
        return recheck(*c.initial_certificate, ld.initial);
      } catch (const Error&) {
        return false;
      }
    }
  }
  return false;
}

}  // namespace delta
