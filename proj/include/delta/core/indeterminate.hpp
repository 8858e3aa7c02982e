#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace delta {

class RationalExpr;

// `defined` names a coefficient whose meaning is an expression over earlier
// symbols; differentiation keeps it opaque (K' is a new jet coordinate).
enum class IndeterminateKind : std::uint8_t { dependent, free, defined };

std::string_view to_string(IndeterminateKind k);

class Indeterminate {
 public:
  static constexpr std::uint32_t kInvalid = 0xFFFFFFFFu;
  static constexpr std::uint32_t kMaxId = (1u << 20) - 1;

  Indeterminate() = default;

  // Idempotent for an existing name of the same kind; throws KindConflict otherwise.
  static Indeterminate declare(std::string_view name, IndeterminateKind kind);
  static Indeterminate dependent(std::string_view name) {
    return declare(name, IndeterminateKind::dependent);
  }
  static Indeterminate free(std::string_view name) { return declare(name, IndeterminateKind::free); }
  // Registers a new defined symbol. The name must be unused.
  static Indeterminate define(std::string_view name, std::shared_ptr<const RationalExpr> definition);
  static std::optional<Indeterminate> find(std::string_view name);
  static Indeterminate from_id(std::uint32_t id);
  static bool valid_name(std::string_view name);

  bool valid() const { return id_ != kInvalid; }
  std::uint32_t id() const { return id_; }
  const std::string& name() const;
  IndeterminateKind kind() const;
  bool is_dependent() const { return kind() == IndeterminateKind::dependent; }
  bool is_free() const { return kind() == IndeterminateKind::free; }
  bool is_defined() const { return kind() == IndeterminateKind::defined; }
  // Non-null exactly for defined symbols.
  const std::shared_ptr<const RationalExpr>& definition() const;

  friend bool operator==(Indeterminate a, Indeterminate b) { return a.id_ == b.id_; }
  friend std::strong_ordering operator<=>(Indeterminate a, Indeterminate b) { return a.id_ <=> b.id_; }

 private:
  explicit Indeterminate(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = kInvalid;
};

// x^(k). Packed into a 32-bit key: 20 bits of id, 12 bits of order.
struct DerivativeSymbol {
  static constexpr std::uint32_t kOrderBits = 12;
  static constexpr std::uint32_t kOrderMask = (1u << kOrderBits) - 1;

  Indeterminate base;
  std::uint32_t order = 0;

  DerivativeSymbol() = default;
  DerivativeSymbol(Indeterminate b, std::uint32_t k = 0);

  std::uint32_t key() const { return (base.id() << kOrderBits) | order; }
  static DerivativeSymbol from_key(std::uint32_t key) {
    return {Indeterminate::from_id(key >> kOrderBits), key & kOrderMask};
  }
  DerivativeSymbol derivative(std::uint32_t k = 1) const { return {base, order + k}; }

  friend bool operator==(const DerivativeSymbol& a, const DerivativeSymbol& b) {
    return a.key() == b.key();
  }
  friend std::strong_ordering operator<=>(const DerivativeSymbol& a, const DerivativeSymbol& b) {
    return a.key() <=> b.key();
  }
};

inline std::uint32_t key_base(std::uint32_t key) { return key >> DerivativeSymbol::kOrderBits; }
inline std::uint32_t key_order(std::uint32_t key) { return key & DerivativeSymbol::kOrderMask; }

// First unused name of the form stem, stem1, stem2, ...
std::string unused_name(std::string_view stem);

}  // namespace delta

template <>
struct std::hash<delta::Indeterminate> {
  std::size_t operator()(delta::Indeterminate x) const noexcept { return x.id(); }
};
