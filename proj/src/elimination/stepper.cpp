#include "stepper.hpp"

#include <atomic>

#include "delta/core/definitions.hpp"
#include "delta/core/errors.hpp"
#include "delta/core/format.hpp"
#include "delta/core/zero_test.hpp"
#include "delta/elimination/oracle.hpp"

namespace delta::detail {

RationalExpr side_coefficient(const LinearEquation& eq, Indeterminate v, unsigned k) {
  for (const auto* side : {&eq.lhs, &eq.rhs}) {
    auto it = side->find(v);
    if (it != side->end()) return k < it->second.size() ? it->second[k] : RationalExpr();
  }
  return RationalExpr();
}

Operator side_operator(const LinearEquation& eq, Indeterminate v) {
  for (const auto* side : {&eq.lhs, &eq.rhs}) {
    auto it = side->find(v);
    if (it != side->end()) return it->second;
  }
  return {};
}

std::optional<Indeterminate> sole_variable(const OperatorMap& side) {
  if (side.size() != 1) return std::nullopt;
  return side.begin()->first;
}

LinearSubstitution cancelling_substitution(const LinearEquation& eq, Indeterminate x, int ord_x, Indeterminate y,
                                           int ord_y, Indeterminate fresh) {
  if (ord_x < 0 || ord_y < ord_x) throw Error("cancelling substitution needs ord_y >= ord_x >= 0");
  RationalExpr lambda = -eq.coefficient(y, ord_y) / eq.coefficient(x, ord_x);
  LinearSubstitution s{x, fresh, {}};
  add_term(s.terms, y, static_cast<unsigned>(ord_y - ord_x), lambda);
  return s;
}

LinearSubstitution solving_substitution(const LinearEquation& eq, Indeterminate z) {
  if (eq.order(z) != 0) throw Error("solving substitution needs " + z.name() + " at order 0");
  RationalExpr c = eq.coefficient(z, 0);
  LinearSubstitution s{z, std::nullopt, {}};
  for (auto v : eq.variables()) {
    if (v == z) continue;
    for (int k = 0; k <= eq.order(v); ++k) {
      RationalExpr t = eq.coefficient(v, k);
      if (!t.formally_zero()) add_term(s.terms, v, k, -t / c);
    }
  }
  return s;
}

bool ZeroChecker::is_zero(const RationalExpr& e) {
  if (e.formally_zero()) return true;
  if (!e.has_kind(IndeterminateKind::defined)) return false;
  try {
    if (eval_.evaluate(e) != 0) return false;
  } catch (const DenominatorVanished&) {
  }
  return delta::is_zero(e);
}

std::optional<bool> ZeroChecker::equal(const RationalExpr& a, const RationalExpr& b) {
  if (a == b) return true;
  try {
    return is_zero(a - b);
  } catch (const ResourceLimit&) {
    return std::nullopt;
  }
}

namespace {

std::string run_stem(const std::string& prefix) {
  static std::atomic<unsigned> runs{0};
  unsigned r = ++runs;
  return r == 1 ? prefix : prefix + "r" + std::to_string(r) + "_";
}

}  // namespace

Stepper::Stepper(const LinearDiffSystem& initial, const ReduceOptions& opts, ReductionTrace& trace)
    : opts_(opts), trace_(trace), cur_(initial), zero_(opts.certify.seed), stem_(run_stem(opts.name_prefix)) {}

void Stepper::name_initial() {
  auto defs = name_coefficients(cur_, 0);
  trace_.definitions.insert(trace_.definitions.end(), defs.begin(), defs.end());
}

Indeterminate Stepper::fresh(Indeterminate x) const { return fresh_variable(x, cur_.variables); }

bool Stepper::needs_name(const RationalExpr& c) const {
  if (c.is_constant()) return false;
  if (c.den().is_constant()) {
    if (c.num().size() <= opts_.naming_threshold) return false;
  }
  if (c.den().is_constant() && c.num().size() == 1) {
    const auto& m = c.num().terms().front().first;
    if (m.degree() == 1) return false;
  }
  return true;
}

std::vector<Indeterminate> Stepper::name_coefficients(LinearDiffSystem& sys, std::size_t step) {
  std::vector<Indeterminate> defs;
  std::size_t n = 0;
  for (auto& eq : sys.equations)
    for (auto* side : {&eq.lhs, &eq.rhs})
      for (auto& [v, op] : *side)
        for (auto& c : op) {
          if (!needs_name(c)) continue;
          auto k = define_symbol(stem_ + std::to_string(step) + "_" + std::to_string(++n), c);
          defs.push_back(k);
          c = RationalExpr::symbol(k);
        }
  return defs;
}

void Stepper::compare_formulas(const LinearDiffSystem& raw, const std::vector<FormulaValue>& formulas) {
  for (const auto& f : formulas) {
    if (f.equation >= raw.equations.size()) continue;
    RationalExpr direct = side_coefficient(raw.equations[f.equation], f.variable, f.order);
    ++trace_.closed_form_checks;
    auto eq = zero_.equal(f.value, direct);
    if (!eq) {
      trace_.notes.push_back("closed form for " + f.coefficient + " undecided");
    } else if (!*eq) {
      trace_.discrepancies.push_back({f.coefficient, f.formula, f.value, direct});
    }
  }
}

ReductionStep& Stepper::apply(StepKind kind, std::size_t equation, LinearSubstitution s, RationalExpr denominator,
                              bool removes, bool detour, const std::vector<FormulaValue>& formulas) {
  const std::size_t number = trace_.steps.size() + 1;
  ReductionStep step;
  step.kind = kind;
  step.equation = equation;
  step.denominator = denominator;
  step.removes_equation = removes;
  step.detour = detour;
  step.certificate = certify_nonzero(denominator, opts_.certify);

  LinearDiffSystem raw = apply_substitution(cur_, s);
  if (removes) raw.equations.erase(raw.equations.begin() + static_cast<std::ptrdiff_t>(equation));

  dropped_.clear();
  for (std::size_t i = 0; i < raw.equations.size(); ++i)
    for (auto* side : {&raw.equations[i].lhs, &raw.equations[i].rhs}) {
      for (auto& [v, op] : *side)
        for (std::size_t k = 0; k < op.size(); ++k) {
          if (op[k].formally_zero()) continue;
          bool zero = false;
          try {
            zero = zero_.is_zero(op[k]);
          } catch (const ResourceLimit&) {
            trace_.notes.push_back("step " + std::to_string(number) + ": zero test undecided for the coefficient of " +
                                   to_string(DerivativeSymbol(v, k)) + ", kept");
          }
          if (zero) {
            dropped_.push_back({i, v, static_cast<unsigned>(k), op[k]});
            op[k] = RationalExpr();
          }
        }
      for (auto it = side->begin(); it != side->end();) {
        trim(it->second);
        it = it->second.empty() ? side->erase(it) : std::next(it);
      }
    }

  if (opts_.closed_forms) compare_formulas(raw, formulas);

  LinearDiffSystem after = raw;
  step.definitions = name_coefficients(after, number);
  trace_.definitions.insert(trace_.definitions.end(), step.definitions.begin(), step.definitions.end());

  if (opts_.oracle) {
    std::optional<std::size_t> removed;
    if (removes) removed = equation;
    auto r = substitution_oracle_check(cur_, s, after, step.definitions, removed);
    ++trace_.oracle_checks;
    for (auto& m : r.mismatches) trace_.oracle_failures.push_back("step " + std::to_string(number) + ": " + m);
    if (s.fresh) {
      auto rt = round_trip_check(cur_, s, after, step.definitions);
      ++trace_.oracle_checks;
      for (auto& m : rt.mismatches)
        trace_.oracle_failures.push_back("step " + std::to_string(number) + " round trip: " + m);
    }
  }

  step.substitution = std::move(s);
  cur_ = std::move(after);
  trace_.steps.push_back(std::move(step));
  trace_.snapshots.push_back(cur_);
  return trace_.steps.back();
}

}  // namespace delta::detail
