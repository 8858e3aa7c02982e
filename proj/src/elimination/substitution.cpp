#include "delta/elimination/substitution.hpp"

#include <algorithm>
#include <cctype>

namespace delta {

RationalExpr LinearSubstitution::expression() const {
  RationalExpr e = fresh ? RationalExpr::symbol(*fresh) : RationalExpr();
  for (const auto& [v, op] : terms)
    for (std::size_t k = 0; k < op.size(); ++k) e += op[k] * RationalExpr::symbol(v, static_cast<std::uint32_t>(k));
  return e;
}

LinearSubstitution LinearSubstitution::inverse() const {
  if (!fresh) throw Error("a solve has no inverse substitution");
  LinearSubstitution inv{*fresh, variable, {}};
  for (const auto& [v, op] : terms)
    for (std::size_t k = 0; k < op.size(); ++k) add_term(inv.terms, v, static_cast<unsigned>(k), -op[k]);
  return inv;
}

LinearEquation apply_substitution(const LinearEquation& eq, const LinearSubstitution& s) {
  const Indeterminate x = s.variable;
  OperatorMap diff;
  std::vector<std::vector<RationalExpr>> rho_derivs;
  std::vector<std::pair<Indeterminate, unsigned>> rho_index;
  for (const auto& [v, op] : s.terms)
    for (std::size_t j = 0; j < op.size(); ++j)
      if (!op[j].formally_zero()) {
        rho_index.emplace_back(v, static_cast<unsigned>(j));
        rho_derivs.push_back({op[j]});
      }
  auto rho = [&](std::size_t t, unsigned n) -> const RationalExpr& {
    auto& d = rho_derivs[t];
    while (d.size() <= n) d.push_back(derive_rational(d.back()));
    return d[n];
  };
  auto place = [&](Indeterminate v, unsigned k, const RationalExpr& c) {
    if (v != x) {
      add_term(diff, v, k, c);
      return;
    }
    if (s.fresh) add_term(diff, *s.fresh, k, c);
    for (std::size_t t = 0; t < rho_index.size(); ++t) {
      auto [y, j] = rho_index[t];
      mpz_class binom = 1;
      for (unsigned m = 0; m <= k; ++m) {
        // binom = C(k, m)
        add_term(diff, y, j + m, c * RationalExpr(mpq_class(binom)) * rho(t, k - m));
        binom = binom * (k - m) / (m + 1);
      }
    }
  };
  for (const auto& [v, op] : eq.lhs)
    for (std::size_t k = 0; k < op.size(); ++k) place(v, static_cast<unsigned>(k), op[k]);
  for (const auto& [v, op] : eq.rhs)
    for (std::size_t k = 0; k < op.size(); ++k) place(v, static_cast<unsigned>(k), -op[k]);

  bool x_left = eq.lhs.count(x) > 0 || eq.rhs.count(x) == 0;
  LinearEquation out;
  for (auto& [v, op] : diff) {
    bool left;
    if (eq.lhs.count(v)) left = true;
    else if (eq.rhs.count(v)) left = false;
    else left = x_left;
    if (left) {
      out.lhs[v] = std::move(op);
    } else {
      for (auto& c : op) c = -c;
      out.rhs[v] = std::move(op);
    }
  }
  return out;
}

LinearDiffSystem apply_substitution(const LinearDiffSystem& sys, const LinearSubstitution& s) {
  LinearDiffSystem out;
  for (const auto& eq : sys.equations) out.equations.push_back(apply_substitution(eq, s));
  for (auto v : sys.variables) {
    if (v == s.variable) {
      if (s.fresh) out.variables.push_back(*s.fresh);
    } else {
      out.variables.push_back(v);
    }
  }
  return out;
}

Indeterminate fresh_variable(Indeterminate x, const std::vector<Indeterminate>& avoid) {
  const std::string& name = x.name();
  std::size_t cut = name.size();
  while (cut > 1 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
  std::string stem = name.substr(0, cut);
  unsigned long next = cut < name.size() ? std::stoul(name.substr(cut)) + 1 : 1;
  for (;; ++next) {
    std::string cand = stem + std::to_string(next);
    auto found = Indeterminate::find(cand);
    if (found && !found->is_dependent()) continue;
    if (found && std::find(avoid.begin(), avoid.end(), *found) != avoid.end()) continue;
    return Indeterminate::dependent(cand);
  }
}

}  // namespace delta
