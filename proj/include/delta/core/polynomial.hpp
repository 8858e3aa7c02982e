#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "delta/core/monomial.hpp"

namespace delta {

// Finite Q-linear combination of monomials in derivative symbols.
// Terms are kept sorted with the leading (largest) monomial first.
class DiffPolynomial {
 public:
  using Term = std::pair<Monomial, mpq_class>;

  DiffPolynomial() = default;
  DiffPolynomial(const mpq_class& c);  // NOLINT(google-explicit-constructor)
  DiffPolynomial(long c) : DiffPolynomial(mpq_class(c)) {}  // NOLINT
  DiffPolynomial(int c) : DiffPolynomial(mpq_class(c)) {}   // NOLINT
  explicit DiffPolynomial(DerivativeSymbol s);
  static DiffPolynomial symbol(Indeterminate x, std::uint32_t order = 0) {
    return DiffPolynomial(DerivativeSymbol(x, order));
  }
  static DiffPolynomial monomial(Monomial m, mpq_class c = 1);
  // Sorts, merges and drops zero coefficients.
  static DiffPolynomial from_terms(std::vector<Term> terms);
  // Terms already strictly decreasing with nonzero coefficients.
  static DiffPolynomial from_sorted(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  mpq_class constant_value() const;  // requires is_constant()
  const Term& leading() const { return terms_.front(); }

  std::uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().first.degree(); }
  std::uint32_t degree_in(DerivativeSymbol s) const;
  // Highest derivative order of any dependent variable, -1 if none.
  int order() const;
  // Highest derivative order of x, -1 if absent.
  int order_of(Indeterminate x) const;
  std::vector<DerivativeSymbol> symbols() const;
  std::vector<Indeterminate> bases() const;
  bool contains(DerivativeSymbol s) const;
  bool has_kind(IndeterminateKind k) const;

  // Coefficient of s^d viewing the polynomial as univariate in s.
  DiffPolynomial coefficient(DerivativeSymbol s, std::uint32_t d) const;
  // Greatest monomial dividing every term.
  Monomial monomial_content() const;
  DiffPolynomial divide_monomial(const Monomial& m) const;  // m must divide every term
  std::optional<DiffPolynomial> divide_exact(const DiffPolynomial& d) const;

  DiffPolynomial derive() const;
  DiffPolynomial partial(DerivativeSymbol s) const;
  DiffPolynomial pow(unsigned e) const;

  DiffPolynomial operator-() const;
  DiffPolynomial& operator+=(const DiffPolynomial& o);
  DiffPolynomial& operator-=(const DiffPolynomial& o);
  DiffPolynomial& operator*=(const DiffPolynomial& o);
  DiffPolynomial& operator*=(const mpq_class& c);

  friend DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b);
  friend DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b);
  friend DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b);
  friend DiffPolynomial operator*(const DiffPolynomial& a, const mpq_class& c);
  friend DiffPolynomial operator*(const mpq_class& c, const DiffPolynomial& a) { return a * c; }
  friend bool operator==(const DiffPolynomial& a, const DiffPolynomial& b) { return a.terms_ == b.terms_; }

  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

enum class ArithOp { add, sub, mul };
DiffPolynomial arithmetic(const DiffPolynomial& a, const DiffPolynomial& b, ArithOp op);
inline DiffPolynomial derive(const DiffPolynomial& p, unsigned k = 1) {
  DiffPolynomial r = p;
  for (unsigned i = 0; i < k; ++i) r = r.derive();
  return r;
}
inline DiffPolynomial partial(const DiffPolynomial& p, DerivativeSymbol s) { return p.partial(s); }

void check_term_cap(std::size_t n);

}  // namespace delta
