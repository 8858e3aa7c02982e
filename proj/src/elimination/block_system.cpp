#include "delta/elimination/block_system.hpp"

#include <algorithm>

#include "delta/core/errors.hpp"
#include "stepper.hpp"

namespace delta {
namespace {

using detail::side_coefficient;
using detail::side_operator;
using detail::sole_variable;

int order_of(const Operator& op) { return static_cast<int>(op.size()) - 1; }

RationalExpr at(const Operator& op, int i) {
  return i >= 0 && i < static_cast<int>(op.size()) ? op[static_cast<std::size_t>(i)] : RationalExpr();
}

RationalExpr binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return RationalExpr();
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return RationalExpr(mpq_class(r));
}

// Derivatives of a fixed expression, computed on demand.
class Derivatives {
 public:
  explicit Derivatives(RationalExpr e) : d_{std::move(e)} {}
  const RationalExpr& operator()(int n) {
    while (static_cast<int>(d_.size()) <= n) d_.push_back(derive_rational(d_.back()));
    return d_[static_cast<std::size_t>(n)];
  }

 private:
  std::vector<RationalExpr> d_;
};

std::string idx(const char* stem, int i) { return std::string(stem) + "_" + std::to_string(i); }

ReductionStep& sub1_step(detail::Stepper& st, const ReduceOptions& opts) {
  BlockSystem s = BlockSystem::from_system(st.current());
  int p = s.ell(), q = order_of(s.b);
  if (p < 0 || q < p) throw Error("first substitution needs the top z-order at least the u-order");
  RationalExpr a_l = at(s.a, p);
  Indeterminate u_new = st.fresh(s.u);
  auto sub = detail::cancelling_substitution(st.current().equations[0], s.u, p, s.z, q, u_new);
  std::vector<FormulaValue> f;
  if (opts.closed_forms) f = sub1_formulas(s, u_new);
  return st.apply(StepKind::A1, 0, std::move(sub), a_l, false, false, f);
}

void sub2_steps(detail::Stepper& st, const ReduceOptions& opts) {
  BlockSystem s = BlockSystem::from_system(st.current());
  for (std::size_t j = 0; j < s.lower.size(); ++j) {
    s = BlockSystem::from_system(st.current());
    const auto& lb = s.lower[j];
    int hz = order_of(lb.e), hw = order_of(lb.beta);
    if (hz < 0 || hw < 0 || hz < hw) continue;
    RationalExpr beta_h = at(lb.beta, hw);
    Indeterminate w_new = st.fresh(lb.w);
    auto sub = detail::cancelling_substitution(st.current().equations[j + 1], lb.w, hw, s.z, hz, w_new);
    std::vector<FormulaValue> f;
    if (opts.closed_forms) f = sub2_formulas(s, j);
    st.apply(StepKind::A2, j + 1, std::move(sub), beta_h, false, false, f);
  }
}

ReductionStep& sub3_step(detail::Stepper& st, const ReduceOptions& opts, int stage) {
  BlockSystem s = BlockSystem::from_system(st.current());
  int p = s.ell(), q = order_of(s.b);
  if (q != p - 1) throw DegenerateSubstitution("b~_" + std::to_string(p - 1), stage);
  RationalExpr bt = at(s.b, q);
  Indeterminate z_new = st.fresh(s.z);
  auto sub = detail::cancelling_substitution(st.current().equations[0], s.z, q, s.u, p, z_new);
  std::vector<FormulaValue> f;
  if (opts.closed_forms) f = sub3_formulas(s);
  return st.apply(StepKind::A3, 0, std::move(sub), bt, false, false, f);
}

}  // namespace

int BlockSystem::ell() const { return order_of(a); }

int BlockSystem::h() const {
  int r = ell();
  for (const auto& lb : lower) r = std::max(r, order_of(lb.beta));
  return r;
}

LinearDiffSystem BlockSystem::to_system() const {
  LinearDiffSystem sys;
  LinearEquation top;
  if (!a.empty()) top.lhs[u] = a;
  if (!b.empty()) top.rhs[z] = b;
  sys.equations.push_back(top);
  sys.variables = {u, z};
  for (const auto& lb : lower) {
    LinearEquation eq;
    if (!lb.c.empty()) eq.lhs[u] = lb.c;
    if (!lb.e.empty()) eq.lhs[z] = lb.e;
    if (!lb.beta.empty()) eq.rhs[lb.w] = lb.beta;
    sys.equations.push_back(eq);
    sys.variables.push_back(lb.w);
  }
  return sys;
}

BlockSystem BlockSystem::from_system(const LinearDiffSystem& sys) {
  if (sys.equations.empty()) throw MalformedSystem("empty system");
  const auto& top = sys.equations[0];
  auto u = sole_variable(top.lhs), z = sole_variable(top.rhs);
  if (!u || !z) throw MalformedSystem("top equation must have one variable per side");
  BlockSystem s;
  s.u = *u;
  s.z = *z;
  s.a = top.lhs.at(*u);
  s.b = top.rhs.at(*z);
  for (std::size_t i = 1; i < sys.equations.size(); ++i) {
    const auto& eq = sys.equations[i];
    LowerBlock lb;
    std::optional<Indeterminate> w;
    for (auto v : eq.variables())
      if (v != s.u && v != s.z) {
        if (w) throw MalformedSystem("lower equation has more than one own variable");
        w = v;
      }
    if (!w) throw MalformedSystem("lower equation without its own variable");
    if (eq.lhs.count(*w)) throw MalformedSystem("own variable of a lower equation must be on the right");
    lb.w = *w;
    lb.c = side_operator(eq, s.u);
    lb.e = side_operator(eq, s.z);
    lb.beta = eq.rhs.at(*w);
    s.lower.push_back(std::move(lb));
  }
  return s;
}

std::vector<FormulaValue> sub1_formulas(const BlockSystem& s, Indeterminate /*u_new*/) {
  std::vector<FormulaValue> out;
  const int l = s.ell();
  if (l < 1 || order_of(s.b) != l) return out;
  Derivatives lam(at(s.b, l) / at(s.a, l));
  for (int i = 0; i < l; ++i) {
    RationalExpr v = at(s.b, i);
    for (int k = 0; k <= l - i; ++k) v -= binom(l, l - i - k) * at(s.a, l - k) * lam(l - i - k);
    out.push_back({idx("b~", i), "b_i - sum_k C(l, l-i-k) a_{l-k} (b_l/a_l)^(l-i-k)", 0, s.z,
                   static_cast<unsigned>(i), v});
  }
  for (std::size_t j = 0; j < s.lower.size(); ++j) {
    const auto& lb = s.lower[j];
    const int h = order_of(lb.beta);
    if (h < 1 || order_of(lb.c) > h || order_of(lb.e) > h - 1) continue;
    std::string tag = "[" + std::to_string(j + 1) + "]";
    out.push_back({"d_" + std::to_string(h) + tag, "c_h (b_l/a_l)", j + 1, s.z, static_cast<unsigned>(h),
                   at(lb.c, h) * lam(0)});
    for (int i = 0; i < h; ++i) {
      RationalExpr v = at(lb.e, i);
      for (int k = 0; k <= h - i; ++k) v += binom(h, h - i - k) * at(lb.c, h - k) * lam(h - i - k);
      out.push_back({idx("d", i) + tag, "e_i + sum_k C(h, h-i-k) c_{h-k} (b_l/a_l)^(h-i-k)", j + 1, s.z,
                     static_cast<unsigned>(i), v});
    }
  }
  return out;
}

std::vector<FormulaValue> sub2_formulas(const BlockSystem& s, std::size_t j) {
  std::vector<FormulaValue> out;
  if (j >= s.lower.size()) return out;
  const auto& lb = s.lower[j];
  const int h = order_of(lb.beta);
  if (h < 1 || order_of(lb.e) != h) return out;
  Derivatives nu(at(lb.e, h) / at(lb.beta, h));
  std::string tag = "[" + std::to_string(j + 1) + "]";
  for (int i = 0; i < h; ++i) {
    RationalExpr v = at(lb.e, i);
    for (int k = 0; k <= h - i; ++k) v -= binom(h, h - i - k) * at(lb.beta, h - k) * nu(h - i - k);
    out.push_back({idx("e~", i) + tag, "d_i - sum_k C(h, h-i-k) beta_{h-k} (d_h/beta_h)^(h-i-k)", j + 1, s.z,
                   static_cast<unsigned>(i), v});
  }
  return out;
}

std::vector<FormulaValue> sub3_formulas(const BlockSystem& s) {
  std::vector<FormulaValue> out;
  const int l = s.ell();
  if (l < 1 || order_of(s.b) != l - 1) return out;
  Derivatives mu(at(s.a, l) / at(s.b, l - 1));
  out.push_back({"a~_0", "a~_0 := a_0", 0, s.u, 0, at(s.a, 0)});
  for (int i = 1; i < l; ++i) {
    RationalExpr v = at(s.a, i);
    for (int k = 0; k <= l - i; ++k) v -= binom(l - 1, l - i - k) * at(s.b, l - 1 - k) * mu(l - i - k);
    out.push_back({idx("a~", i), "a_i - sum_k C(l-1, l-i-k) b~_{l-1-k} (a_l/b~_{l-1})^(l-i-k)", 0, s.u,
                   static_cast<unsigned>(i), v});
  }
  for (std::size_t j = 0; j < s.lower.size(); ++j) {
    const auto& lb = s.lower[j];
    const int h = order_of(lb.beta);
    if (h < 1 || order_of(lb.c) > h || order_of(lb.e) > h - 1) continue;
    std::string tag = "[" + std::to_string(j + 1) + "]";
    out.push_back({"c~_0" + tag, "c~_0 := c_0", j + 1, s.u, 0, at(lb.c, 0)});
    for (int i = 1; i <= h; ++i) {
      RationalExpr v = at(lb.c, i);
      for (int k = 0; k <= h - i; ++k) v += binom(h - 1, h - i - k) * at(lb.e, h - 1 - k) * mu(h - i - k);
      out.push_back({idx("c~", i) + tag, "c_i + sum_k C(h-1, h-i-k) e~_{h-1-k} (a_l/b~_{l-1})^(h-i-k)", j + 1,
                     s.u, static_cast<unsigned>(i), v});
    }
  }
  return out;
}

std::vector<FormulaValue> bsolve_formulas(const BlockSystem& s) {
  std::vector<FormulaValue> out;
  if (s.ell() != 0 || order_of(s.b) != 0) return out;
  Derivatives rho(at(s.a, 0) / at(s.b, 0));
  for (std::size_t j = 0; j < s.lower.size(); ++j) {
    const auto& lb = s.lower[j];
    const int h = order_of(lb.beta);
    if (h < 1 || order_of(lb.c) > h || order_of(lb.e) > h - 1) continue;
    std::string tag = "[" + std::to_string(j + 1) + "]";
    // The top equation is gone, so lower equation j is now equation j.
    out.push_back({idx("c^", h) + tag, "c^_h := c~_h", j, s.u, static_cast<unsigned>(h), at(lb.c, h)});
    for (int i = 0; i < h; ++i) {
      RationalExpr v = at(lb.c, i);
      for (int jj = i; jj < h; ++jj) v += binom(h - 1, jj - i) * at(lb.e, jj) * rho(jj - i);
      out.push_back({idx("c^", i) + tag, "c~_i + sum_k C(h-1, k) e~_{i+k} (a~_0/b~_0)^(k)", j, s.u,
                     static_cast<unsigned>(i), v});
    }
  }
  return out;
}

BlockRun alg_a_sub1(const BlockSystem& s, const ReduceOptions& opts) {
  BlockRun run;
  run.trace.initial = s.to_system();
  detail::Stepper st(run.trace.initial, opts, run.trace);
  st.name_initial();
  sub1_step(st, opts);
  run.system = BlockSystem::from_system(st.current());
  return run;
}

BlockRun alg_a_sub2(const BlockSystem& s, const ReduceOptions& opts) {
  BlockRun run;
  run.trace.initial = s.to_system();
  detail::Stepper st(run.trace.initial, opts, run.trace);
  st.name_initial();
  sub2_steps(st, opts);
  run.system = BlockSystem::from_system(st.current());
  return run;
}

BlockRun alg_a_sub3(const BlockSystem& s, const ReduceOptions& opts) {
  BlockRun run;
  run.trace.initial = s.to_system();
  detail::Stepper st(run.trace.initial, opts, run.trace);
  st.name_initial();
  sub3_step(st, opts, 0);
  run.system = BlockSystem::from_system(st.current());
  return run;
}

BlockRun alg_b(const BlockSystem& s, const ReduceOptions& opts) {
  BlockRun run;
  run.trace.initial = s.to_system();
  detail::Stepper st(run.trace.initial, opts, run.trace);
  st.name_initial();
  int stage = 0;
  while (BlockSystem::from_system(st.current()).ell() > 0) {
    BlockSystem cur = BlockSystem::from_system(st.current());
    if (order_of(cur.b) < cur.ell()) throw DegenerateSubstitution("b_" + std::to_string(cur.ell()), stage);
    sub1_step(st, opts);
    sub2_steps(st, opts);
    sub3_step(st, opts, stage);
    ++stage;
  }
  BlockSystem cur = BlockSystem::from_system(st.current());
  if (order_of(cur.b) != 0) throw DegenerateSubstitution("b~_0", stage);
  auto sub = detail::solving_substitution(st.current().equations[0], cur.z);
  std::vector<FormulaValue> f;
  if (opts.closed_forms) f = bsolve_formulas(cur);
  st.apply(StepKind::B_solve, 0, std::move(sub), at(cur.b, 0), true, false, f);
  run.trace.outcome.final_equation = cur.to_system().equations[0];
  run.trace.outcome.determined = cur.z;
  run.trace.outcome.parameter = cur.u;
  if (!st.current().equations.empty()) {
    auto rest = st.current();
    auto u = sole_variable(rest.equations[0].lhs), z = sole_variable(rest.equations[0].rhs);
    if (u && z) run.system = BlockSystem::from_system(rest);
  }
  return run;
}

EqChReport eq_ch_report(const BlockSystem& s, const ReduceOptions& opts) {
  EqChReport r;
  const int l = s.ell();
  if (s.lower.size() != 1 || l < 1 || order_of(s.b) != l) return r;
  const auto& lb = s.lower[0];
  const int h = order_of(lb.beta);
  if (h < 2 || order_of(lb.c) > h || order_of(lb.e) > h - 1) return r;
  r.applicable = true;

  ReduceOptions o = opts;
  o.closed_forms = false;
  ReductionTrace trace;
  detail::Stepper st(s.to_system(), o, trace);
  sub1_step(st, o);
  BlockSystem after1 = BlockSystem::from_system(st.current());
  RationalExpr bt = at(after1.b, l - 1);
  if (bt.formally_zero()) throw DegenerateSubstitution("b~_" + std::to_string(l - 1), 0);
  sub2_steps(st, o);
  sub3_step(st, o, 0);
  BlockSystem after3 = BlockSystem::from_system(st.current());
  r.direct = at(after3.lower[0].c, h);

  RationalExpr a_l = at(s.a, l), b_l = at(s.b, l);
  RationalExpr c_h = at(lb.c, h), c_h1 = at(lb.c, h - 1), e_h1 = at(lb.e, h - 1);
  RationalExpr beta_h = at(lb.beta, h), beta_h1 = at(lb.beta, h - 1);
  RationalExpr H(h);
  RationalExpr bracket = RationalExpr(1) + (a_l / bt) * (H * derive_rational(b_l / a_l) -
                                                          H * beta_h * derive_rational(b_l / (beta_h * a_l)) -
                                                          beta_h1 * b_l / (beta_h * a_l));
  r.formula = (b_l / bt) * c_h1 - (H * b_l / bt) * derive_rational(c_h) + bracket * c_h + (a_l / bt) * e_h1;
  auto eq = st.zero().equal(r.formula, r.direct);
  r.equal = eq.value_or(false);
  return r;
}

}  // namespace delta
