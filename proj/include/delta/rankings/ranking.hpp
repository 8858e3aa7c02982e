#pragma once

#include <compare>
#include <vector>

#include "delta/core/errors.hpp"
#include "delta/core/polynomial.hpp"

namespace delta {

class UnrankedIndeterminate : public Error {
 public:
  using Error::Error;
};

class ConstantPolynomial : public Error {
 public:
  using Error::Error;
};

enum class RankingKind { orderly, elimination };

// Priority lists run from highest to lowest.
// orderly: derivative order first, then priority, then name (unlisted last).
// elimination: priority first, then order; unlisted indeterminates are errors.
struct Ranking {
  RankingKind kind = RankingKind::orderly;
  std::vector<Indeterminate> priority;

  static Ranking orderly(std::vector<Indeterminate> p) { return {RankingKind::orderly, std::move(p)}; }
  static Ranking elimination(std::vector<Indeterminate> p) { return {RankingKind::elimination, std::move(p)}; }

  std::strong_ordering compare(DerivativeSymbol a, DerivativeSymbol b) const;
  bool ranks(Indeterminate x) const;
};

DerivativeSymbol leader(const DiffPolynomial& p, const Ranking& r);

struct InitialSeparant {
  DerivativeSymbol leader;
  std::uint32_t degree;
  DiffPolynomial initial;
  DiffPolynomial separant;
};
InitialSeparant initial_and_separant(const DiffPolynomial& p, const Ranking& r);

}  // namespace delta
