#include "delta/core/monomial.hpp"

namespace delta {

Monomial::Monomial(std::uint32_t key, std::uint32_t exp) {
  if (exp > 0) {
    f_.push_back({key, exp});
    degree_ = exp;
  }
}

Monomial Monomial::from_sorted(Storage factors) {
  Monomial m;
  m.f_ = std::move(factors);
  for (const auto& f : m.f_) m.degree_ += f.exp;
  return m;
}

std::uint32_t Monomial::exponent(std::uint32_t key) const {
  for (const auto& f : f_) {
    if (f.key == key) return f.exp;
    if (f.key > key) break;
  }
  return 0;
}

Monomial Monomial::with_exponent(std::uint32_t key, std::uint32_t exp) const {
  Storage out;
  out.reserve(f_.size() + 1);
  bool placed = false;
  for (const auto& f : f_) {
    if (!placed && f.key >= key) {
      if (exp > 0) out.push_back({key, exp});
      placed = true;
      if (f.key == key) continue;
    }
    out.push_back(f);
  }
  if (!placed && exp > 0) out.push_back({key, exp});
  return from_sorted(std::move(out));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.f_.empty()) return b;
  if (b.f_.empty()) return a;
  Monomial r;
  r.f_.reserve(a.f_.size() + b.f_.size());
  std::size_t i = 0, j = 0;
  while (i < a.f_.size() && j < b.f_.size()) {
    if (a.f_[i].key < b.f_[j].key) {
      r.f_.push_back(a.f_[i++]);
    } else if (b.f_[j].key < a.f_[i].key) {
      r.f_.push_back(b.f_[j++]);
    } else {
      r.f_.push_back({a.f_[i].key, a.f_[i].exp + b.f_[j].exp});
      ++i;
      ++j;
    }
  }
  for (; i < a.f_.size(); ++i) r.f_.push_back(a.f_[i]);
  for (; j < b.f_.size(); ++j) r.f_.push_back(b.f_[j]);
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

bool Monomial::divides(const Monomial& m) const {
  if (degree_ > m.degree_) return false;
  std::size_t j = 0;
  for (const auto& f : f_) {
    while (j < m.f_.size() && m.f_[j].key < f.key) ++j;
    if (j == m.f_.size() || m.f_[j].key != f.key || m.f_[j].exp < f.exp) return false;
  }
  return true;
}

std::optional<Monomial> Monomial::divide(const Monomial& d) const {
  if (!d.divides(*this)) return std::nullopt;
  Monomial r;
  std::size_t j = 0;
  for (const auto& f : f_) {
    while (j < d.f_.size() && d.f_[j].key < f.key) ++j;
    std::uint32_t e = f.exp;
    if (j < d.f_.size() && d.f_[j].key == f.key) e -= d.f_[j].exp;
    if (e > 0) r.f_.push_back({f.key, e});
  }
  r.degree_ = degree_ - d.degree_;
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < a.f_.size() && j < b.f_.size()) {
    if (a.f_[i].key < b.f_[j].key) {
      ++i;
    } else if (b.f_[j].key < a.f_[i].key) {
      ++j;
    } else {
      auto e = std::min(a.f_[i].exp, b.f_[j].exp);
      r.f_.push_back({a.f_[i].key, e});
      r.degree_ += e;
      ++i;
      ++j;
    }
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ degree_;
  for (const auto& f : f_) {
    h ^= (static_cast<std::uint64_t>(f.key) << 8) ^ f.exp;
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  // Compare exponent vectors from the most significant (largest) key down.
  auto i = a.f_.size(), j = b.f_.size();
  while (i > 0 && j > 0) {
    const auto& fa = a.f_[i - 1];
    const auto& fb = b.f_[j - 1];
    if (fa.key != fb.key) return fa.key <=> fb.key;
    if (fa.exp != fb.exp) return fa.exp <=> fb.exp;
    --i;
    --j;
  }
  if (i > 0) return std::strong_ordering::greater;
  if (j > 0) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

}  // namespace delta
