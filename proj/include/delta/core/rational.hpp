#pragma once

#include <functional>
#include <optional>

#include "delta/core/polynomial.hpp"

namespace delta {

// num/den with den != 0. No full GCD: cancellation is limited to common
// monomial content and exact division of one side by the other, and den is
// scaled to leading coefficient 1. Equality is decided by cross-multiplication.
class RationalExpr {
 public:
  RationalExpr() : den_(1) {}
  RationalExpr(DiffPolynomial num);  // NOLINT(google-explicit-constructor)
  RationalExpr(DiffPolynomial num, DiffPolynomial den);
  RationalExpr(const mpq_class& c) : RationalExpr(DiffPolynomial(c)) {}  // NOLINT
  RationalExpr(long c) : RationalExpr(DiffPolynomial(c)) {}              // NOLINT
  RationalExpr(int c) : RationalExpr(DiffPolynomial(c)) {}               // NOLINT
  static RationalExpr symbol(Indeterminate x, std::uint32_t order = 0) {
    return RationalExpr(DiffPolynomial::symbol(x, order));
  }

  const DiffPolynomial& num() const { return num_; }
  const DiffPolynomial& den() const { return den_; }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  mpq_class constant_value() const { return num_.constant_value() / den_.constant_value(); }
  // Zero as a rational function in the symbols that occur (defined symbols opaque).
  bool formally_zero() const { return num_.is_zero(); }
  std::size_t size() const { return num_.size() + den_.size(); }

  std::vector<DerivativeSymbol> symbols() const;
  std::vector<Indeterminate> bases() const;
  bool has_kind(IndeterminateKind k) const { return num_.has_kind(k) || den_.has_kind(k); }
  bool contains(DerivativeSymbol s) const { return num_.contains(s) || den_.contains(s); }
  int order_of(Indeterminate x) const { return std::max(num_.order_of(x), den_.order_of(x)); }
  // Highest derivative order of any dependent variable, -1 if none.
  int order() const { return std::max(num_.order(), den_.order()); }

  RationalExpr inverse() const;
  RationalExpr pow(int e) const;

  RationalExpr operator-() const;
  RationalExpr& operator+=(const RationalExpr& o) { return *this = *this + o; }
  RationalExpr& operator-=(const RationalExpr& o) { return *this = *this - o; }
  RationalExpr& operator*=(const RationalExpr& o) { return *this = *this * o; }
  RationalExpr& operator/=(const RationalExpr& o) { return *this = *this / o; }
  friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);
  // Formal equality (cross-multiplication); see equal_exact for defined symbols.
  friend bool operator==(const RationalExpr& a, const RationalExpr& b);

 private:
  struct Raw {};
  RationalExpr(Raw, DiffPolynomial num, DiffPolynomial den) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  DiffPolynomial num_;
  DiffPolynomial den_;
};

RationalExpr derive_rational(const RationalExpr& e, unsigned k = 1);
RationalExpr partial(const RationalExpr& e, DerivativeSymbol s);

// Replaces each symbol for which `f` returns a value.
using SymbolMap = std::function<std::optional<RationalExpr>(DerivativeSymbol)>;
RationalExpr substitute_symbols(const RationalExpr& e, const SymbolMap& f);
RationalExpr substitute_symbols(const DiffPolynomial& p, const SymbolMap& f);

// x^(k) -> k-th derivative of replacement, for every k occurring.
RationalExpr substitute(const RationalExpr& e, Indeterminate target, const RationalExpr& replacement);

}  // namespace delta
