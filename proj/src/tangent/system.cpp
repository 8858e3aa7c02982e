#include "delta/tangent/system.hpp"

#include <algorithm>

#include "delta/core/format.hpp"

namespace delta {
namespace {

RationalExpr side_coefficient(const OperatorMap& side, Indeterminate v, unsigned k) {
  auto it = side.find(v);
  if (it == side.end() || k >= it->second.size()) return {};
  return it->second[k];
}

OperatorMap split_linear(const RationalExpr& e, const std::vector<Indeterminate>& vars) {
  auto is_var = [&](Indeterminate x) { return std::find(vars.begin(), vars.end(), x) != vars.end(); };
  for (auto s : e.den().symbols())
    if (is_var(s.base)) throw MalformedSystem("dependent variable in a denominator: " + to_string(e));
  OperatorMap out;
  DiffPolynomial constant;
  for (const auto& [m, c] : e.num().terms()) {
    std::optional<DerivativeSymbol> var;
    for (const auto& f : m) {
      auto s = DerivativeSymbol::from_key(f.key);
      if (!is_var(s.base)) continue;
      if (var || f.exp > 1) throw MalformedSystem("equation is not linear: " + to_string(e));
      var = s;
    }
    if (!var) {
      constant += DiffPolynomial::monomial(m, c);
      continue;
    }
    Monomial rest = m.with_exponent(var->key(), 0);
    add_term(out, var->base, var->order, RationalExpr(DiffPolynomial::monomial(rest, c), e.den()));
  }
  if (!constant.is_zero()) throw MalformedSystem("equation has a term free of dependent variables: " + to_string(e));
  return out;
}

}  // namespace

void trim(Operator& op) {
  while (!op.empty() && op.back().formally_zero()) op.pop_back();
}

void add_term(OperatorMap& side, Indeterminate v, unsigned k, const RationalExpr& c) {
  if (c.formally_zero()) return;
  auto& op = side[v];
  if (op.size() <= k) op.resize(k + 1);
  op[k] += c;
  trim(op);
  if (op.empty()) side.erase(v);
}

RationalExpr LinearEquation::coefficient(Indeterminate v, unsigned k) const {
  return side_coefficient(lhs, v, k) - side_coefficient(rhs, v, k);
}

int LinearEquation::order(Indeterminate v) const {
  int best = -1;
  std::size_t n = 0;
  if (auto it = lhs.find(v); it != lhs.end()) n = std::max(n, it->second.size());
  if (auto it = rhs.find(v); it != rhs.end()) n = std::max(n, it->second.size());
  for (std::size_t k = 0; k < n; ++k)
    if (!coefficient(v, static_cast<unsigned>(k)).formally_zero()) best = static_cast<int>(k);
  return best;
}

std::vector<Indeterminate> LinearEquation::variables() const {
  std::vector<Indeterminate> out;
  for (const auto& [v, op] : lhs) out.push_back(v);
  for (const auto& [v, op] : rhs) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase_if(out, [&](Indeterminate v) { return order(v) < 0; });
  return out;
}

RationalExpr LinearEquation::expression() const {
  RationalExpr e;
  for (const auto& [v, op] : lhs)
    for (std::size_t k = 0; k < op.size(); ++k) e += op[k] * RationalExpr::symbol(v, static_cast<std::uint32_t>(k));
  for (const auto& [v, op] : rhs)
    for (std::size_t k = 0; k < op.size(); ++k) e -= op[k] * RationalExpr::symbol(v, static_cast<std::uint32_t>(k));
  return e;
}

LinearEquation linear_equation(const RationalExpr& lhs, const RationalExpr& rhs,
                               const std::vector<Indeterminate>& vars) {
  return {split_linear(lhs, vars), split_linear(rhs, vars)};
}

}  // namespace delta
