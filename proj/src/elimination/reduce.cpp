#include "delta/elimination/reduce.hpp"

#include "delta/core/errors.hpp"
#include "delta/core/format.hpp"
#include "delta/core/zero_test.hpp"
#include "delta/elimination/block_system.hpp"
#include "stepper.hpp"

namespace delta {

std::string_view to_string(StepKind k) {
  switch (k) {
    case StepKind::A1: return "A1";
    case StepKind::A2: return "A2";
    case StepKind::A3: return "A3";
    case StepKind::B_solve: return "B-solve";
    case StepKind::direct_solve: return "direct-solve";
  }
  return "?";
}

namespace {

using detail::side_coefficient;
using detail::sole_variable;

// The block view is only needed for the closed forms, which need the printed shape.
std::optional<BlockSystem> block_view(const LinearDiffSystem& sys) {
  try {
    return BlockSystem::from_system(sys);
  } catch (const MalformedSystem&) {
    return std::nullopt;
  }
}

class Engine {
 public:
  Engine(const LinearDiffSystem& sys, const ReduceOptions& opts) : opts_(opts) {
    trace_.initial = sys;
    st_.emplace(sys, opts_, trace_);
    st_->name_initial();
  }

  ReductionTrace run() {
    // Each step lowers the total order of the system, so this bound is generous.
    std::size_t guard = 64;
    for (const auto& eq : trace_.initial.equations)
      for (auto v : eq.variables()) guard += 8 * static_cast<std::size_t>(eq.order(v) + 1);
    while (!st_->current().equations.empty()) {
      if (trace_.steps.size() > guard) throw Error("reduction does not terminate");
      if (!iterate()) break;
    }
    if (opts_.recheck) {
      trace_.certificates_rechecked = true;
      trace_.certificates_ok = recheck_trace(trace_);
    }
    return std::move(trace_);
  }

 private:
  const LinearDiffSystem& cur() const { return st_->current(); }

  std::vector<FormulaValue> formulas(std::vector<FormulaValue> (*f)(const BlockSystem&)) const {
    if (!opts_.closed_forms) return {};
    auto b = block_view(cur());
    return b ? f(*b) : std::vector<FormulaValue>{};
  }

  // Returns false once the outcome is settled.
  bool iterate() {
    const LinearEquation& top = cur().equations[0];
    auto u = sole_variable(top.lhs), z = sole_variable(top.rhs);
    if (!u || !z) {
      if (u && top.rhs.empty()) {
        degenerate("b~_0", "the right-hand side of the top equation vanished");
        return false;
      }
      throw MalformedSystem("top equation must have one variable per side");
    }
    const int p = top.order(*u), q = top.order(*z);
    const bool last = cur().equations.size() == 1;

    if (q == 0 && (p == 0 || !opts_.strict_algorithm_b)) {
      RationalExpr b0 = side_coefficient(top, *z, 0);
      LinearEquation final_eq = top;
      auto sub = detail::solving_substitution(top, *z);
      StepKind kind = p == 0 ? StepKind::B_solve : StepKind::direct_solve;
      auto f = kind == StepKind::B_solve ? formulas(&bsolve_formulas) : std::vector<FormulaValue>{};
      st_->apply(kind, 0, std::move(sub), b0, true, false, f);
      if (last) {
        trace_.outcome.final_equation = std::move(final_eq);
        trace_.outcome.determined = *z;
        trace_.outcome.parameter = *u;
        if (trace_.outcome.kind == OutcomeKind::degenerate) trace_.outcome.recovered = true;
        return false;
      }
      return true;
    }

    if (q >= p) {
      RationalExpr a_p = side_coefficient(top, *u, static_cast<unsigned>(p));
      Indeterminate u_new = st_->fresh(*u);
      auto sub = detail::cancelling_substitution(top, *u, p, *z, q, u_new);
      std::vector<FormulaValue> f;
      if (opts_.closed_forms && q == p)
        if (auto b = block_view(cur())) f = sub1_formulas(*b, u_new);
      st_->apply(StepKind::A1, 0, std::move(sub), a_p, false, false, f);
      lower_steps(*z);
      return true;
    }

    // p > q: lower the u-order of the top equation.
    bool detour = p > q + 1;
    if (detour && trace_.outcome.kind != OutcomeKind::degenerate) {
      degenerate("B~" + std::to_string(p - 1), "");
      for (const auto& d : st_->dropped())
        if (d.equation == 0 && d.variable == *z && static_cast<int>(d.order) == p - 1) {
          trace_.outcome.vanished_expression = to_string(d.value);
          trace_.outcome.vanished_value = d.value;
        }
    }
    RationalExpr b_q = side_coefficient(top, *z, static_cast<unsigned>(q));
    Indeterminate z_new = st_->fresh(*z);
    auto sub = detail::cancelling_substitution(top, *z, q, *u, p, z_new);
    std::vector<FormulaValue> f;
    if (!detour) f = formulas(&sub3_formulas);
    st_->apply(StepKind::A3, 0, std::move(sub), b_q, false, detour, f);
    return true;
  }

  // A2 on each lower equation while z occurs there at order at least that of
  // the equation's own variable.
  void lower_steps(Indeterminate z) {
    for (std::size_t j = 1; j < cur().equations.size(); ++j) {
      for (;;) {
        const LinearEquation& eq = cur().equations[j];
        auto w = sole_variable(eq.rhs);
        if (!w || *w == z) break;
        int hz = eq.order(z), hw = eq.order(*w);
        if (hz < 0 || hw < 0 || hz < hw) break;
        RationalExpr beta = side_coefficient(eq, *w, static_cast<unsigned>(hw));
        Indeterminate w_new = st_->fresh(*w);
        auto sub = detail::cancelling_substitution(eq, *w, hw, z, hz, w_new);
        std::vector<FormulaValue> f;
        if (opts_.closed_forms && hz == hw)
          if (auto b = block_view(cur())) f = sub2_formulas(*b, j - 1);
        st_->apply(StepKind::A2, j, std::move(sub), beta, false, false, f);
      }
    }
  }

  void degenerate(std::string coefficient, std::string vanished) {
    trace_.outcome.kind = OutcomeKind::degenerate;
    trace_.outcome.coefficient = std::move(coefficient);
    trace_.outcome.vanished_expression = std::move(vanished);
    trace_.outcome.step = trace_.steps.size();
  }

  const ReduceOptions& opts_;
  ReductionTrace trace_;
  std::optional<detail::Stepper> st_;
};

}  // namespace

ReductionTrace reduce_to_line(const LinearDiffSystem& sys, const ReduceOptions& opts) {
  if (sys.equations.empty()) {
    ReductionTrace t;
    t.initial = sys;
    return t;
  }
  return Engine(sys, opts).run();
}

bool recheck_trace(const ReductionTrace& t) {
  for (const auto& s : t.steps) {
    if (!recheck(s.certificate, s.denominator)) return false;
    try {
      if (is_zero(s.denominator)) return false;
    } catch (const ResourceLimit&) {
      return false;
    }
  }
  return true;
}

}  // namespace delta
