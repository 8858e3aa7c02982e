#include "delta/frontend/printer.hpp"

#include <set>

#include "delta/core/definitions.hpp"
#include "delta/core/format.hpp"

namespace delta {
namespace {

std::string term(const RationalExpr& c, DerivativeSymbol s) {
  std::string sym = to_string(s);
  if (c.is_constant()) {
    mpq_class v = c.constant_value();
    if (v == 1) return sym;
    if (v == -1) return "-" + sym;
    return to_string(v) + "*" + sym;
  }
  if (c.is_polynomial() && c.num().size() == 1) return to_string(c) + "*" + sym;
  return "(" + to_string(c) + ")*" + sym;
}

std::string join(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string out = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i][0] == '-') out += " - " + terms[i].substr(1);
    else out += " + " + terms[i];
  }
  return out;
}

}  // namespace

std::string to_string(const OperatorMap& side) {
  std::vector<std::string> terms;
  for (const auto& [v, op] : side)
    for (std::size_t k = op.size(); k-- > 0;)
      if (!op[k].formally_zero()) terms.push_back(term(op[k], DerivativeSymbol(v, static_cast<std::uint32_t>(k))));
  return join(terms);
}

std::string to_string(const LinearEquation& eq) { return to_string(eq.lhs) + " = " + to_string(eq.rhs); }

std::vector<std::string> to_strings(const LinearDiffSystem& sys) {
  std::vector<std::string> out;
  for (const auto& eq : sys.equations) out.push_back(to_string(eq));
  return out;
}

std::string to_string(const LinearSubstitution& s) {
  std::vector<std::string> terms;
  if (s.fresh) terms.push_back(s.fresh->name());
  for (const auto& [v, op] : s.terms)
    for (std::size_t k = op.size(); k-- > 0;)
      if (!op[k].formally_zero()) terms.push_back(term(op[k], DerivativeSymbol(v, static_cast<std::uint32_t>(k))));
  return s.variable.name() + " = " + join(terms);
}

std::string definition_string(Indeterminate k) { return k.name() + " := " + to_string(definition_of(k)); }

std::string preamble(const LinearDiffSystem& sys) {
  std::set<Indeterminate> free;
  for (const auto& eq : sys.equations)
    for (const auto* side : {&eq.lhs, &eq.rhs})
      for (const auto& [v, op] : *side)
        for (const auto& c : op)
          for (auto b : c.bases())
            if (b.kind() == IndeterminateKind::free) free.insert(b);
  std::string out = "free:";
  for (auto f : free) out += " " + f.name();
  out += ";\nvars:";
  for (auto v : sys.variables) out += " " + v.name();
  return out + ";\n";
}

}  // namespace delta
