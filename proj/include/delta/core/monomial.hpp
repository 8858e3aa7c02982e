#pragma once

#include <compare>
#include <cstdint>
#include <optional>

#include <boost/container/small_vector.hpp>

#include "delta/core/indeterminate.hpp"

namespace delta {

struct Factor {
  std::uint32_t key;
  std::uint32_t exp;
  friend bool operator==(const Factor&, const Factor&) = default;
};

// Power product of derivative symbols, factors sorted by key.
// Ordered degree-lexicographically with larger keys more significant; this is
// a monomial order, so leading terms multiply.
class Monomial {
 public:
  using Storage = boost::container::small_vector<Factor, 4>;

  Monomial() = default;
  explicit Monomial(std::uint32_t key, std::uint32_t exp = 1);
  explicit Monomial(DerivativeSymbol s, std::uint32_t exp = 1) : Monomial(s.key(), exp) {}
  // Factors must be sorted by key with positive exponents.
  static Monomial from_sorted(Storage factors);

  bool is_one() const { return f_.empty(); }
  std::size_t size() const { return f_.size(); }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(std::uint32_t key) const;
  const Factor* begin() const { return f_.data(); }
  const Factor* end() const { return f_.data() + f_.size(); }
  const Factor& operator[](std::size_t i) const { return f_[i]; }

  Monomial with_exponent(std::uint32_t key, std::uint32_t exp) const;
  std::optional<Monomial> divide(const Monomial& d) const;
  bool divides(const Monomial& m) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  std::size_t hash() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.f_ == b.f_;
  }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  Storage f_;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

}  // namespace delta
