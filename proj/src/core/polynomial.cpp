#include "delta/core/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

#include "delta/core/errors.hpp"
#include "delta/core/limits.hpp"

namespace delta {
namespace {

bool term_greater(const DiffPolynomial::Term& a, const DiffPolynomial::Term& b) {
  return a.first > b.first;
}

void check_degree(std::uint32_t d) {
  if (d > limits().max_degree)
    throw ResourceLimit("total degree " + std::to_string(d) + " exceeds cap " +
                        std::to_string(limits().max_degree));
}

void check_order(std::uint32_t k) {
  if (k > limits().max_order)
    throw ResourceLimit("derivative order " + std::to_string(k) + " exceeds cap " +
                        std::to_string(limits().max_order));
}

}  // namespace

void check_term_cap(std::size_t n) {
  if (n > limits().max_terms)
    throw ResourceLimit("term count " + std::to_string(n) + " exceeds cap " +
                        std::to_string(limits().max_terms));
}

DiffPolynomial::DiffPolynomial(const mpq_class& c) {
  if (c != 0) terms_.emplace_back(Monomial(), c);
}

DiffPolynomial::DiffPolynomial(DerivativeSymbol s) {
  check_order(s.order);
  terms_.emplace_back(Monomial(s), mpq_class(1));
}

DiffPolynomial DiffPolynomial::monomial(Monomial m, mpq_class c) {
  DiffPolynomial p;
  if (c != 0) {
    check_degree(m.degree());
    p.terms_.emplace_back(std::move(m), std::move(c));
  }
  return p;
}

DiffPolynomial DiffPolynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  DiffPolynomial p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
  check_term_cap(p.terms_.size());
  if (!p.terms_.empty()) check_degree(p.total_degree());
  return p;
}

DiffPolynomial DiffPolynomial::from_sorted(std::vector<Term> terms) {
  DiffPolynomial p;
  p.terms_ = std::move(terms);
  return p;
}

mpq_class DiffPolynomial::constant_value() const {
  if (terms_.empty()) return 0;
  if (!terms_[0].first.is_one() || terms_.size() != 1) throw Error("polynomial is not constant");
  return terms_[0].second;
}

std::uint32_t DiffPolynomial::degree_in(DerivativeSymbol s) const {
  std::uint32_t d = 0;
  auto k = s.key();
  for (const auto& t : terms_) d = std::max(d, t.first.exponent(k));
  return d;
}

int DiffPolynomial::order() const {
  int best = -1;
  for (const auto& t : terms_)
    for (const auto& f : t.first) {
      auto x = Indeterminate::from_id(key_base(f.key));
      if (x.is_dependent()) best = std::max(best, static_cast<int>(key_order(f.key)));
    }
  return best;
}

int DiffPolynomial::order_of(Indeterminate x) const {
  int best = -1;
  for (const auto& t : terms_)
    for (const auto& f : t.first)
      if (key_base(f.key) == x.id()) best = std::max(best, static_cast<int>(key_order(f.key)));
  return best;
}

std::vector<DerivativeSymbol> DiffPolynomial::symbols() const {
  std::vector<std::uint32_t> keys;
  for (const auto& t : terms_)
    for (const auto& f : t.first) keys.push_back(f.key);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<DerivativeSymbol> out;
  out.reserve(keys.size());
  for (auto k : keys) out.push_back(DerivativeSymbol::from_key(k));
  return out;
}

std::vector<Indeterminate> DiffPolynomial::bases() const {
  std::vector<Indeterminate> out;
  for (auto s : symbols())
    if (out.empty() || out.back() != s.base) out.push_back(s.base);
  return out;
}

bool DiffPolynomial::contains(DerivativeSymbol s) const {
  auto k = s.key();
  for (const auto& t : terms_)
    if (t.first.exponent(k) > 0) return true;
  return false;
}

bool DiffPolynomial::has_kind(IndeterminateKind kind) const {
  for (auto x : bases())
    if (x.kind() == kind) return true;
  return false;
}

DiffPolynomial DiffPolynomial::coefficient(DerivativeSymbol s, std::uint32_t d) const {
  DiffPolynomial r;
  auto k = s.key();
  for (const auto& t : terms_)
    if (t.first.exponent(k) == d) r.terms_.emplace_back(t.first.with_exponent(k, 0), t.second);
  return r;
}

Monomial DiffPolynomial::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_[0].first;
  for (std::size_t i = 1; i < terms_.size() && !g.is_one(); ++i) g = Monomial::gcd(g, terms_[i].first);
  return g;
}

DiffPolynomial DiffPolynomial::divide_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  DiffPolynomial r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto q = t.first.divide(m);
    if (!q) throw Error("monomial does not divide polynomial");
    r.terms_.emplace_back(std::move(*q), t.second);
  }
  return r;
}

std::optional<DiffPolynomial> DiffPolynomial::divide_exact(const DiffPolynomial& d) const {
  if (d.is_zero()) throw Error("division by zero polynomial");
  if (is_zero()) return DiffPolynomial();
  if (d.is_constant()) return *this * mpq_class(1 / d.constant_value());
  if (d.size() == 1) {
    for (const auto& t : terms_)
      if (!d.terms_[0].first.divides(t.first)) return std::nullopt;
    return divide_monomial(d.terms_[0].first) * mpq_class(1 / d.terms_[0].second);
  }
  if (d.total_degree() > total_degree() || d.size() > size()) return std::nullopt;
  // Every variable of d must appear in the dividend with at least its degree.
  for (const auto& f : d.terms_[0].first)
    if (degree_in(DerivativeSymbol::from_key(f.key)) < f.exp) return std::nullopt;
  const auto& [lm, lc] = d.terms_[0];
  DiffPolynomial r = *this;
  std::vector<Term> q;
  while (!r.is_zero()) {
    auto qm = r.terms_[0].first.divide(lm);
    if (!qm) return std::nullopt;
    mpq_class qc = r.terms_[0].second / lc;
    // A quotient term cannot exceed the dividend's leading term divided by lm.
    if (q.size() > size()) return std::nullopt;
    r -= DiffPolynomial::monomial(*qm, qc) * d;
    q.emplace_back(std::move(*qm), std::move(qc));
  }
  return from_terms(std::move(q));
}

DiffPolynomial DiffPolynomial::derive() const {
  std::vector<Term> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m) {
      check_order(key_order(f.key) + 1);
      Monomial reduced = m.with_exponent(f.key, f.exp - 1);
      Monomial next = reduced * Monomial(f.key + 1);
      out.emplace_back(std::move(next), c * f.exp);
    }
  }
  return from_terms(std::move(out));
}

DiffPolynomial DiffPolynomial::partial(DerivativeSymbol s) const {
  DiffPolynomial r;
  auto k = s.key();
  for (const auto& [m, c] : terms_) {
    auto e = m.exponent(k);
    if (e == 0) continue;
    r.terms_.emplace_back(m.with_exponent(k, e - 1), c * e);
  }
  return r;
}

DiffPolynomial DiffPolynomial::pow(unsigned e) const {
  if (e == 0) return DiffPolynomial(1);
  if (!is_zero()) check_degree(total_degree() * e);
  DiffPolynomial result(1), base = *this;
  while (true) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e == 0) break;
    base *= base;
  }
  return result;
}

DiffPolynomial DiffPolynomial::operator-() const {
  DiffPolynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

DiffPolynomial merge(const DiffPolynomial& a, const DiffPolynomial& b, bool subtract) {
  std::vector<DiffPolynomial::Term> out;
  out.reserve(a.size() + b.size());
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    int c;
    if (i == ta.size()) c = 1;
    else if (j == tb.size()) c = -1;
    else {
      auto o = ta[i].first <=> tb[j].first;
      c = o > 0 ? -1 : (o < 0 ? 1 : 0);
    }
    if (c < 0) {
      out.push_back(ta[i++]);
    } else if (c > 0) {
      out.emplace_back(tb[j].first, subtract ? mpq_class(-tb[j].second) : tb[j].second);
      ++j;
    } else {
      mpq_class v = subtract ? mpq_class(ta[i].second - tb[j].second) : mpq_class(ta[i].second + tb[j].second);
      if (v != 0) out.emplace_back(ta[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  check_term_cap(out.size());
  return DiffPolynomial::from_sorted(std::move(out));
}

}  // namespace

DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b) { return merge(a, b, false); }
DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b) { return merge(a, b, true); }

DiffPolynomial& DiffPolynomial::operator+=(const DiffPolynomial& o) { return *this = *this + o; }
DiffPolynomial& DiffPolynomial::operator-=(const DiffPolynomial& o) { return *this = *this - o; }
DiffPolynomial& DiffPolynomial::operator*=(const DiffPolynomial& o) { return *this = *this * o; }

DiffPolynomial& DiffPolynomial::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

DiffPolynomial operator*(const DiffPolynomial& a, const mpq_class& c) {
  DiffPolynomial r = a;
  r *= c;
  return r;
}

DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  check_degree(a.total_degree() + b.total_degree());
  if (a.size() == 1 || b.size() == 1) {
    const auto& single = a.size() == 1 ? a : b;
    const auto& other = a.size() == 1 ? b : a;
    const auto& [m, c] = single.terms()[0];
    std::vector<DiffPolynomial::Term> out;
    out.reserve(other.size());
    // Multiplying by a monomial preserves the order.
    for (const auto& t : other.terms()) out.emplace_back(t.first * m, t.second * c);
    return DiffPolynomial::from_sorted(std::move(out));
  }
  std::unordered_map<Monomial, mpq_class, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(a.size() * b.size(), limits().max_terms + 1));
  mpq_class tmp;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      tmp = ca * cb;
      auto [it, inserted] = acc.try_emplace(ma * mb, tmp);
      if (!inserted) it->second += tmp;
    }
    check_term_cap(acc.size());
  }
  std::vector<DiffPolynomial::Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.emplace_back(m, std::move(c));
  std::sort(out.begin(), out.end(), term_greater);
  return DiffPolynomial::from_sorted(std::move(out));
}

DiffPolynomial arithmetic(const DiffPolynomial& a, const DiffPolynomial& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  return {};
}

std::size_t DiffPolynomial::hash() const {
  std::size_t h = terms_.size();
  for (const auto& [m, c] : terms_) h = h * 1000003u ^ m.hash();
  return h;
}

}  // namespace delta
