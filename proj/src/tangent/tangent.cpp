#include "delta/tangent/tangent.hpp"

#include <algorithm>

#include "delta/core/format.hpp"

namespace delta {

DiffEquationSystem build_Vm(const RationalExpr& f, Indeterminate x, unsigned m,
                            std::optional<Indeterminate> inhomogeneity, const std::string& y_name) {
  RationalExpr g = f;
  if (inhomogeneity) {
    g = substitute(g, *inhomogeneity, RationalExpr(0));
  }
  DiffEquationSystem sys;
  auto y = Indeterminate::dependent(y_name);
  for (unsigned j = 1; j <= m; ++j) {
    auto xj = Indeterminate::dependent(x.name() + std::to_string(j));
    sys.variables.push_back(xj);
    sys.equations.push_back(substitute(g, x, RationalExpr::symbol(xj)) - RationalExpr::symbol(y));
  }
  sys.variables.push_back(y);
  return sys;
}

LinearDiffSystem diff_tangent_system(const DiffEquationSystem& sys, const std::map<Indeterminate, Indeterminate>& point,
                                     const std::map<Indeterminate, std::string>& names) {
  std::map<Indeterminate, Indeterminate> tangent_var;
  LinearDiffSystem out;
  for (auto v : sys.variables) {
    Indeterminate t;
    if (auto it = names.find(v); it != names.end()) t = Indeterminate::dependent(it->second);
    else if (point.count(v)) t = Indeterminate::dependent("d" + v.name());
    else t = v;
    tangent_var[v] = t;
    out.variables.push_back(t);
  }
  auto at_point = [&](const RationalExpr& e) {
    return substitute_symbols(e, [&](DerivativeSymbol s) -> std::optional<RationalExpr> {
      auto it = point.find(s.base);
      if (it == point.end()) return std::nullopt;
      return RationalExpr::symbol(it->second, s.order);
    });
  };
  for (const auto& eq : sys.equations) {
    LinearEquation le;
    for (auto s : eq.symbols()) {
      if (std::find(sys.variables.begin(), sys.variables.end(), s.base) == sys.variables.end()) continue;
      RationalExpr c = at_point(partial(eq, s));
      for (auto r : c.symbols())
        if (std::find(sys.variables.begin(), sys.variables.end(), r.base) != sys.variables.end())
          throw MalformedSystem("no point value for " + to_string(r));
      if (point.count(s.base)) add_term(le.lhs, tangent_var[s.base], s.order, c);
      else add_term(le.rhs, tangent_var[s.base], s.order, -c);
    }
    out.equations.push_back(std::move(le));
  }
  return out;
}

LinearDiffSystem eliminate_y(const LinearDiffSystem& sys, Indeterminate y) {
  if (sys.equations.size() < 2) throw MalformedSystem("need at least two equations");
  for (const auto& eq : sys.equations) {
    auto it = eq.rhs.find(y);
    bool single = eq.rhs.size() == 1 && it != eq.rhs.end() && it->second.size() == 1 && it->second[0] == RationalExpr(1);
    if (!single || eq.lhs.count(y)) throw MalformedSystem("every right-hand side must be exactly " + y.name());
  }
  LinearDiffSystem out;
  for (auto v : sys.variables)
    if (v != y) out.variables.push_back(v);
  for (std::size_t k = 1; k < sys.equations.size(); ++k)
    out.equations.push_back({sys.equations[0].lhs, sys.equations[k].lhs});
  return out;
}

}  // namespace delta
