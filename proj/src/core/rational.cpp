#include "delta/core/rational.hpp"

#include <map>

#include "delta/core/errors.hpp"

namespace delta {
namespace {

// Exact-division attempts are skipped above this many term products.
constexpr std::size_t kDivisionBudget = 400'000;

bool cheap_division(const DiffPolynomial& a, const DiffPolynomial& b) {
  return a.size() * b.size() <= kDivisionBudget;
}

std::optional<DiffPolynomial> try_divide(const DiffPolynomial& a, const DiffPolynomial& b) {
  if (b.is_constant()) return a.divide_exact(b);
  if (b.size() > a.size() || !cheap_division(a, b)) return std::nullopt;
  return a.divide_exact(b);
}

}  // namespace

RationalExpr::RationalExpr(DiffPolynomial num) : num_(std::move(num)), den_(1) {}

RationalExpr::RationalExpr(DiffPolynomial num, DiffPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalExpr::normalize() {
  if (den_.is_zero()) throw Error("zero denominator");
  if (num_.is_zero()) {
    den_ = DiffPolynomial(1);
    return;
  }
  if (den_.is_constant()) {
    num_ *= mpq_class(1 / den_.constant_value());
    den_ = DiffPolynomial(1);
    return;
  }
  Monomial g = Monomial::gcd(num_.monomial_content(), den_.monomial_content());
  if (!g.is_one()) {
    num_ = num_.divide_monomial(g);
    den_ = den_.divide_monomial(g);
  }
  if (den_.size() > 1 || !den_.leading().first.is_one()) {
    if (auto q = try_divide(num_, den_)) {
      num_ = std::move(*q);
      den_ = DiffPolynomial(1);
      return;
    }
    if (!num_.is_constant()) {
      if (auto q = try_divide(den_, num_)) {
        den_ = std::move(*q);
        num_ = DiffPolynomial(1);
      }
    }
  }
  mpq_class lc = den_.leading().second;
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
  if (den_.is_constant()) {
    num_ *= mpq_class(1 / den_.constant_value());
    den_ = DiffPolynomial(1);
  }
}

std::vector<DerivativeSymbol> RationalExpr::symbols() const {
  auto a = num_.symbols();
  auto b = den_.symbols();
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<Indeterminate> RationalExpr::bases() const {
  std::vector<Indeterminate> out;
  for (auto s : symbols())
    if (out.empty() || out.back() != s.base) out.push_back(s.base);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RationalExpr RationalExpr::inverse() const {
  if (num_.is_zero()) throw Error("zero denominator");
  RationalExpr r(Raw{}, den_, num_);
  // Already coprime as far as normalize can tell; only rescale.
  if (r.den_.is_constant()) {
    r.num_ *= mpq_class(1 / r.den_.constant_value());
    r.den_ = DiffPolynomial(1);
  } else {
    mpq_class inv = 1 / r.den_.leading().second;
    r.num_ *= inv;
    r.den_ *= inv;
  }
  return r;
}

RationalExpr RationalExpr::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  return RationalExpr(Raw{}, num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RationalExpr RationalExpr::operator-() const { return RationalExpr(Raw{}, -num_, den_); }

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
  if (a.num_.is_zero()) return b;
  if (b.num_.is_zero()) return a;
  if (a.den_ == b.den_) return RationalExpr(a.num_ + b.num_, a.den_);
  if (b.is_polynomial()) return RationalExpr(a.num_ + b.num_ * a.den_, a.den_);
  if (a.is_polynomial()) return RationalExpr(a.num_ * b.den_ + b.num_, b.den_);
  if (auto q = try_divide(a.den_, b.den_)) return RationalExpr(a.num_ + b.num_ * *q, a.den_);
  if (auto q = try_divide(b.den_, a.den_)) return RationalExpr(a.num_ * *q + b.num_, b.den_);
  return RationalExpr(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) { return a + (-b); }

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
  if (a.num_.is_zero() || b.num_.is_zero()) return RationalExpr();
  if (a.is_polynomial() && b.is_polynomial()) return RationalExpr(a.num_ * b.num_);
  DiffPolynomial an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  auto cancel = [](DiffPolynomial& n, DiffPolynomial& d) {
    if (d.is_constant() || n.is_constant()) return;
    if (n == d) {
      n = DiffPolynomial(1);
      d = DiffPolynomial(1);
    } else if (auto q = try_divide(n, d)) {
      n = std::move(*q);
      d = DiffPolynomial(1);
    } else if (auto q2 = try_divide(d, n)) {
      d = std::move(*q2);
      n = DiffPolynomial(1);
    }
  };
  cancel(an, bd);
  cancel(bn, ad);
  return RationalExpr(an * bn, ad * bd);
}

RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) { return a * b.inverse(); }

bool operator==(const RationalExpr& a, const RationalExpr& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RationalExpr derive_rational(const RationalExpr& e, unsigned k) {
  RationalExpr r = e;
  for (unsigned i = 0; i < k; ++i) {
    if (r.is_polynomial()) {
      r = RationalExpr(r.num().derive());
    } else {
      const auto& n = r.num();
      const auto& d = r.den();
      r = RationalExpr(n.derive() * d - n * d.derive(), d * d);
    }
  }
  return r;
}

RationalExpr partial(const RationalExpr& e, DerivativeSymbol s) {
  if (e.is_polynomial()) return RationalExpr(e.num().partial(s));
  const auto& n = e.num();
  const auto& d = e.den();
  if (!d.contains(s)) return RationalExpr(n.partial(s), d);
  return RationalExpr(n.partial(s) * d - n * d.partial(s), d * d);
}

RationalExpr substitute_symbols(const DiffPolynomial& p, const SymbolMap& f) {
  struct Entry {
    RationalExpr value;
    std::uint32_t max_exp = 0;
    std::vector<DiffPolynomial> npow, dpow;
  };
  std::map<std::uint32_t, Entry> mapped;
  std::vector<std::uint32_t> untouched;
  for (const auto& [m, c] : p.terms())
    for (const auto& fac : m) {
      if (auto it = mapped.find(fac.key); it != mapped.end()) {
        it->second.max_exp = std::max(it->second.max_exp, fac.exp);
        continue;
      }
      if (std::binary_search(untouched.begin(), untouched.end(), fac.key)) continue;
      if (auto v = f(DerivativeSymbol::from_key(fac.key))) {
        mapped.emplace(fac.key, Entry{std::move(*v), fac.exp, {}, {}});
      } else {
        untouched.insert(std::upper_bound(untouched.begin(), untouched.end(), fac.key), fac.key);
      }
    }
  if (mapped.empty()) return RationalExpr(p);
  DiffPolynomial common(1);
  for (auto& [key, e] : mapped) {
    e.npow.push_back(DiffPolynomial(1));
    e.dpow.push_back(DiffPolynomial(1));
    for (std::uint32_t i = 1; i <= e.max_exp; ++i) {
      e.npow.push_back(e.npow.back() * e.value.num());
      e.dpow.push_back(e.value.is_polynomial() ? DiffPolynomial(1) : e.dpow.back() * e.value.den());
    }
    common *= e.dpow[e.max_exp];
  }
  DiffPolynomial total;
  for (const auto& [m, c] : p.terms()) {
    Monomial::Storage rest;
    DiffPolynomial prod(c);
    for (const auto& fac : m) {
      auto it = mapped.find(fac.key);
      if (it == mapped.end()) {
        rest.push_back(fac);
        continue;
      }
      auto& e = it->second;
      prod *= e.npow[fac.exp];
      if (!e.value.is_polynomial()) prod *= e.dpow[e.max_exp - fac.exp];
    }
    // Mapped keys absent from this term still need their full denominator power.
    for (auto& [key, e] : mapped)
      if (!e.value.is_polynomial() && m.exponent(key) == 0) prod *= e.dpow[e.max_exp];
    total += DiffPolynomial::monomial(Monomial::from_sorted(std::move(rest))) * prod;
  }
  return RationalExpr(std::move(total), std::move(common));
}

RationalExpr substitute_symbols(const RationalExpr& e, const SymbolMap& f) {
  RationalExpr n = substitute_symbols(e.num(), f);
  if (e.is_polynomial()) return n * RationalExpr(1, e.den());
  return n / substitute_symbols(e.den(), f);
}

RationalExpr substitute(const RationalExpr& e, Indeterminate target, const RationalExpr& replacement) {
  std::vector<RationalExpr> derivs{replacement};
  SymbolMap f = [&](DerivativeSymbol s) -> std::optional<RationalExpr> {
    if (s.base != target) return std::nullopt;
    while (derivs.size() <= s.order) derivs.push_back(derive_rational(derivs.back()));
    return derivs[s.order];
  };
  return substitute_symbols(e, f);
}

}  // namespace delta
