#include "doctest.h"

#include "delta/core/errors.hpp"
#include "delta/core/zero_test.hpp"
#include "delta/elimination/block_system.hpp"
#include "delta/elimination/m_matrix.hpp"
#include "delta/elimination/oracle.hpp"
#include "delta/elimination/reduce.hpp"
#include "delta/frontend/parser.hpp"
#include "delta/frontend/scenarios.hpp"
#include "delta/tangent/tangent.hpp"
#include "support/generators.hpp"

using namespace delta;

namespace {

RationalExpr P(const char* s) { return parse_expression(s); }

int order_of(const Operator& op) {
  for (int i = static_cast<int>(op.size()); i-- > 0;)
    if (!op[static_cast<std::size_t>(i)].formally_zero()) return i;
  return -1;
}

LinearDiffSystem two_block(const char* text) { return linear_system(parse_document(text)); }

}  // namespace

TEST_CASE("apply_substitution agrees with core substitution") {
  auto sys = two_block("free: ea1 ea2; vars: eu ez; eu'' + ea1*eu = ez'' + ea2*ez");
  Indeterminate u = *Indeterminate::find("eu"), z = *Indeterminate::find("ez");
  Indeterminate u1 = fresh_variable(u, sys.variables);
  CHECK(u1.name() == "eu1");
  LinearSubstitution s{u, u1, {}};
  add_term(s.terms, z, 1, P("ea1/ea2"));
  auto after = apply_substitution(sys, s);
  auto direct = substitute(sys.equations[0].expression(), u, s.expression());
  CHECK(after.equations[0].expression() == direct);
  CHECK(substitution_oracle_check(sys, s, after).ok);
  CHECK(round_trip_check(sys, s, after).ok);
  auto back = apply_substitution(after, s.inverse());
  CHECK(back.equations[0].expression() == sys.equations[0].expression());
}

TEST_CASE("identity substitution leaves the system unchanged") {
  auto sys = two_block("free: ea1 ea2; vars: eu ez; eu'' + ea1*eu = ez'' + ea2*ez");
  Indeterminate u = *Indeterminate::find("eu");
  LinearSubstitution id{u, std::nullopt, {}};
  add_term(id.terms, u, 0, RationalExpr(1));
  auto after = apply_substitution(sys, id);
  CHECK(after.equations[0].expression() == sys.equations[0].expression());
  CHECK(substitution_oracle_check(sys, id, after).ok);
}

TEST_CASE("oracle rejects a corrupted coefficient") {
  testing::Gen g(41);
  auto bs = g.block_system(2, 2, 1, "ec");
  auto run = alg_a_sub1(bs);
  REQUIRE(run.trace.steps.size() == 1);
  REQUIRE(run.trace.oracle_failures.empty());
  const auto& step = run.trace.steps[0];
  auto before = bs.to_system();
  auto after = run.trace.snapshots[0];
  CHECK(substitution_oracle_check(before, step.substitution, after, step.definitions).ok);
  // d_h + 1 in the lower equation.
  auto& e = after.equations[1].lhs[bs.z];
  REQUIRE(!e.empty());
  e.back() = e.back() + RationalExpr(1);
  auto bad = substitution_oracle_check(before, step.substitution, after, step.definitions);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.mismatches.empty());
  CHECK_FALSE(round_trip_check(before, step.substitution, after, step.definitions).ok);
}

TEST_CASE("each substitution of the trio lowers the intended order") {
  testing::Gen g(42);
  int degenerate = 0, runs = 0;
  for (int n = 0; n < 30; ++n) {
    int h = g.uniform(1, 3), ell = g.uniform(1, h), lowers = g.uniform(1, 2);
    auto bs = g.block_system(h, ell, lowers, "et");
    try {
      auto r1 = alg_a_sub1(bs);
      CHECK(r1.trace.oracle_failures.empty());
      CHECK(order_of(r1.system.b) <= ell - 1);
      CHECK(r1.system.ell() == ell);
      auto r2 = alg_a_sub2(r1.system);
      CHECK(r2.trace.oracle_failures.empty());
      for (const auto& lb : r2.system.lower) CHECK(order_of(lb.e) < order_of(lb.beta));
      auto r3 = alg_a_sub3(r2.system);
      CHECK(r3.trace.oracle_failures.empty());
      CHECK(r3.system.ell() == ell - 1);
      CHECK(order_of(r3.system.b) == ell - 1);
      ++runs;
    } catch (const DegenerateSubstitution&) {
      ++degenerate;
    }
  }
  CHECK(runs > 20);
  MESSAGE("degenerate draws: " << degenerate);
}

TEST_CASE("algorithm B takes 3l+1 steps with one lower equation") {
  testing::Gen g(43);
  for (int ell = 1; ell <= 2; ++ell) {
    auto bs = g.block_system(ell, ell, 1, "eb");
    auto run = alg_b(bs);
    CHECK(run.trace.steps.size() == static_cast<std::size_t>(3 * ell + 1));
    CHECK(run.trace.steps.back().kind == StepKind::B_solve);
    CHECK(run.trace.oracle_failures.empty());
    CHECK(run.trace.snapshots.back().equations.size() == 1);
    CHECK(recheck_trace(run.trace));
  }
}

TEST_CASE("closed forms of the first substitution") {
  testing::Gen g(44);
  auto bs = g.block_system(2, 2, 1, "ef");
  auto run = alg_a_sub1(bs);
  // d_h = c_h (b_l / a_l) is asserted; others are recorded.
  bool found = false;
  for (const auto& d : run.trace.discrepancies) found |= d.coefficient.rfind("d_2", 0) == 0;
  CHECK_FALSE(found);
  CHECK(run.trace.closed_form_checks > 0);
}

TEST_CASE("vanishing b~_(l-1) is reported as degenerate") {
  parse_document("free: alpha a1 a2; vars: x;");
  auto& src = scenario_sources()[1].text;
  auto doc = parse_document(src);
  auto V = build_Vm(doc.items[0].lhs, doc.vars[0], 2, *Indeterminate::find("alpha"));
  auto T = diff_tangent_system(V, {{*Indeterminate::find("x1"), *Indeterminate::find("a1")},
                                   {*Indeterminate::find("x2"), *Indeterminate::find("a2")}},
                               {{*Indeterminate::find("x1"), "ju"}, {*Indeterminate::find("x2"), "jv"}});
  auto L = eliminate_y(T, *Indeterminate::find("y"));
  auto bs = BlockSystem::from_system(L);
  auto r1 = alg_a_sub1(bs);
  CHECK(order_of(r1.system.b) < 2);
  try {
    alg_a_sub3(r1.system);
    FAIL("expected a degenerate substitution");
  } catch (const DegenerateSubstitution& e) {
    CHECK(e.coefficient == "b~_2");
  }
  auto t = reduce_to_line(L);
  CHECK(t.outcome.kind == OutcomeKind::degenerate);
  CHECK(t.outcome.coefficient == "B~2");
}

TEST_CASE("M-matrix entries have order i+j-1 in a_l") {
  for (int h = 2; h <= 3; ++h) {
    auto r = m_matrix_report(h);
    CHECK(r.claim_holds);
    CHECK(r.m0 == RationalExpr::symbol(r.b_l) / RationalExpr::symbol(r.bt));
    for (const auto& e : r.entries) {
      CHECK(e.nonzero);
      CHECK(e.order == e.i + e.j - 1);
    }
  }
  CHECK_THROWS(m_matrix_report(1));
}

TEST_CASE("closed form for c~_h is compared with direct substitution") {
  testing::Gen g(45);
  for (int h = 2; h <= 3; ++h) {
    auto bs = g.block_system(h, h, 1, "eq");
    auto r = eq_ch_report(bs);
    CHECK(r.applicable);
    MESSAGE("h=" << h << " closed form " << std::string(r.equal ? "equal" : "different"));
  }
  auto bs = g.block_system(2, 2, 1, "eq");
  bs.lower[0].e.clear();
  auto r = eq_ch_report(bs);
  CHECK(r.applicable);
  auto two = g.block_system(2, 2, 2, "eq");
  CHECK_FALSE(eq_ch_report(two).applicable);
}

TEST_CASE("reduce_to_line on trivial inputs") {
  auto empty = reduce_to_line(LinearDiffSystem{});
  CHECK(empty.steps.empty());
  CHECK(empty.outcome.kind == OutcomeKind::bijection_with_line);
  auto sys = two_block("free: er1 er2; vars: ru rz; ru' + er1*ru = er2*rz");
  auto t = reduce_to_line(sys);
  REQUIRE(t.steps.size() == 1);
  CHECK(t.steps[0].kind == StepKind::direct_solve);
  CHECK(t.outcome.determined == *Indeterminate::find("rz"));
  CHECK(recheck_trace(t));
  ReduceOptions strict;
  strict.strict_algorithm_b = true;
  auto s = reduce_to_line(sys, strict);
  CHECK(s.steps.size() > 1);
  CHECK(s.oracle_failures.empty());
}

TEST_CASE("every certificate mode yields a trace that re-checks") {
  for (auto mode : {CertifyMode::exact, CertifyMode::leading, CertifyMode::jet}) {
    ReduceOptions o;
    o.certify.mode = mode;
    auto sys = free_initial_system(2, 3);
    auto t = reduce_to_line(sys, o);
    CHECK(t.outcome.kind == OutcomeKind::bijection_with_line);
    CHECK(t.certificates_rechecked);
    CHECK(t.certificates_ok);
    CHECK(t.oracle_failures.empty());
  }
}
