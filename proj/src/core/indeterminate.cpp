#include "delta/core/indeterminate.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "delta/core/errors.hpp"
#include "delta/core/limits.hpp"

namespace delta {
namespace {

struct Info {
  std::string name;
  IndeterminateKind kind;
  std::shared_ptr<const RationalExpr> definition;
};

struct Registry {
  std::shared_mutex mutex;
  std::deque<Info> infos;
  std::unordered_map<std::string, std::uint32_t> by_name;
};

Registry& registry() {
  static Registry r;
  return r;
}

const Info& info(std::uint32_t id) {
  auto& r = registry();
  std::shared_lock lock(r.mutex);
  return r.infos.at(id);
}

}  // namespace

std::string_view to_string(IndeterminateKind k) {
  switch (k) {
    case IndeterminateKind::dependent: return "dependent";
    case IndeterminateKind::free: return "free";
    case IndeterminateKind::defined: return "defined";
  }
  return "?";
}

bool Indeterminate::valid_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

Indeterminate Indeterminate::declare(std::string_view name, IndeterminateKind kind) {
  if (kind == IndeterminateKind::defined)
    throw KindConflict("defined symbols need a definition: '" + std::string(name) + "'");
  if (!valid_name(name)) throw Error("invalid identifier '" + std::string(name) + "'");
  auto& r = registry();
  std::unique_lock lock(r.mutex);
  std::string key(name);
  if (auto it = r.by_name.find(key); it != r.by_name.end()) {
    if (r.infos[it->second].kind != kind)
      throw KindConflict("'" + key + "' is already declared as " +
                         std::string(to_string(r.infos[it->second].kind)));
    return Indeterminate(it->second);
  }
  if (r.infos.size() > kMaxId) throw ResourceLimit("too many indeterminates");
  auto id = static_cast<std::uint32_t>(r.infos.size());
  r.infos.push_back({key, kind, nullptr});
  r.by_name.emplace(key, id);
  return Indeterminate(id);
}

Indeterminate Indeterminate::define(std::string_view name,
                                    std::shared_ptr<const RationalExpr> definition) {
  if (!valid_name(name)) throw Error("invalid identifier '" + std::string(name) + "'");
  if (!definition) throw Error("null definition for '" + std::string(name) + "'");
  auto& r = registry();
  std::unique_lock lock(r.mutex);
  std::string key(name);
  if (r.by_name.count(key)) throw KindConflict("'" + key + "' is already declared");
  if (r.infos.size() > kMaxId) throw ResourceLimit("too many indeterminates");
  auto id = static_cast<std::uint32_t>(r.infos.size());
  r.infos.push_back({key, IndeterminateKind::defined, std::move(definition)});
  r.by_name.emplace(key, id);
  return Indeterminate(id);
}

std::optional<Indeterminate> Indeterminate::find(std::string_view name) {
  auto& r = registry();
  std::shared_lock lock(r.mutex);
  if (auto it = r.by_name.find(std::string(name)); it != r.by_name.end())
    return Indeterminate(it->second);
  return std::nullopt;
}

Indeterminate Indeterminate::from_id(std::uint32_t id) { return Indeterminate(id); }

const std::string& Indeterminate::name() const { return info(id_).name; }
IndeterminateKind Indeterminate::kind() const { return info(id_).kind; }
const std::shared_ptr<const RationalExpr>& Indeterminate::definition() const {
  return info(id_).definition;
}

DerivativeSymbol::DerivativeSymbol(Indeterminate b, std::uint32_t k) : base(b), order(k) {
  if (k > kOrderMask) throw ResourceLimit("derivative order out of range");
}

std::string unused_name(std::string_view stem) {
  std::string s(stem);
  if (!Indeterminate::find(s)) return s;
  for (unsigned i = 1;; ++i) {
    auto c = s + std::to_string(i);
    if (!Indeterminate::find(c)) return c;
  }
}

}  // namespace delta
