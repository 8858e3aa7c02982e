#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "delta/core/rational.hpp"

namespace delta {

// Rational values for finitely many base derivative symbols.
class JetAssignment {
 public:
  void set(DerivativeSymbol s, mpq_class v);
  const mpq_class* find(DerivativeSymbol s) const;
  // Highest order assigned (0 when empty).
  std::uint32_t truncation() const;
  const std::map<std::uint32_t, mpq_class>& values() const { return values_; }
  bool empty() const { return values_.empty(); }
  friend bool operator==(const JetAssignment&, const JetAssignment&) = default;

 private:
  std::map<std::uint32_t, mpq_class> values_;
};

// Value of x^(k) depends only on (seed, stream, name of x, k): numerator and
// denominator uniform in [-bound, bound], denominator nonzero.
class JetSampler {
 public:
  explicit JetSampler(std::uint64_t seed, std::uint64_t stream = 0, std::int64_t bound = 1'000'000)
      : seed_(seed), stream_(stream), bound_(bound) {}
  mpq_class value(DerivativeSymbol s) const;

 private:
  std::uint64_t seed_, stream_;
  std::int64_t bound_;
};

// Exact evaluation at a jet. Defined symbols are evaluated through truncated
// Taylor series of their definitions, memoized per symbol.
class JetEvaluator {
 public:
  // Missing values raise Error.
  explicit JetEvaluator(JetAssignment fixed) : assignment_(std::move(fixed)) {}
  // Values are drawn on demand and recorded in assignment().
  explicit JetEvaluator(JetSampler sampler) : sampler_(sampler) {}

  // Throws DenominatorVanished.
  mpq_class evaluate(const RationalExpr& e);
  mpq_class evaluate(const DiffPolynomial& p);
  mpq_class value(DerivativeSymbol s);
  const JetAssignment& assignment() const { return assignment_; }

 private:
  using Series = std::vector<mpq_class>;
  mpq_class base_value(DerivativeSymbol s);
  const Series& defined_series(Indeterminate k, std::size_t len);
  Series symbol_series(DerivativeSymbol s, std::size_t len);
  Series series(const DiffPolynomial& p, std::size_t len);
  Series series(const RationalExpr& e, std::size_t len);

  std::optional<JetSampler> sampler_;
  JetAssignment assignment_;
  std::unordered_map<std::uint32_t, Series> defined_;
};

mpq_class jet_eval(const RationalExpr& e, const JetAssignment& a);

// Up to `trials` sample points, each resampled at most 5 times when a
// denominator vanishes. Returns the first point with a nonzero value.
std::optional<JetAssignment> random_nonzero_witness(const RationalExpr& e, int trials, std::uint64_t seed);

}  // namespace delta
