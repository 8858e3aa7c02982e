#include "doctest.h"

#include "delta/core/definitions.hpp"
#include "delta/core/errors.hpp"
#include "delta/core/zero_test.hpp"
#include "delta/frontend/parser.hpp"
#include "delta/rankings/certificate.hpp"
#include "delta/rankings/leading.hpp"
#include "support/generators.hpp"

using namespace delta;

namespace {

struct Symbols {
  Indeterminate x, y, a, b;
  Symbols() {
    parse_document("free: ra rb; vars: rx ry;");
    x = *Indeterminate::find("rx");
    y = *Indeterminate::find("ry");
    a = *Indeterminate::find("ra");
    b = *Indeterminate::find("rb");
  }
  std::vector<Indeterminate> all() const { return {x, y, a, b}; }
};

RationalExpr P(const char* s) { return parse_expression(s); }

std::vector<Ranking> rankings(const Symbols& s) {
  return {Ranking::orderly({s.x, s.y, s.a, s.b}), Ranking::orderly({s.b, s.a}),
          Ranking::elimination({s.x, s.y, s.a, s.b}), Ranking::elimination({s.b, s.x, s.a, s.y})};
}

}  // namespace

TEST_CASE("rankings are total orders compatible with derivation") {
  Symbols s;
  testing::Gen g(21);
  for (const auto& r : rankings(s)) {
    for (int n = 0; n < 300; ++n) {
      DerivativeSymbol p(g.pick(s.all()), static_cast<std::uint32_t>(g.uniform(0, 4)));
      DerivativeSymbol q(g.pick(s.all()), static_cast<std::uint32_t>(g.uniform(0, 4)));
      DerivativeSymbol t(g.pick(s.all()), static_cast<std::uint32_t>(g.uniform(0, 4)));
      auto pq = r.compare(p, q);
      CHECK((pq == 0) == (p == q));
      CHECK(r.compare(q, p) == 0 <=> pq);
      if (pq < 0 && r.compare(q, t) < 0) CHECK(r.compare(p, t) < 0);
      // theta y > y and theta preserves the order.
      CHECK(r.compare(p.derivative(), p) > 0);
      CHECK(r.compare(p.derivative(2), q.derivative(2)) == pq);
    }
  }
}

TEST_CASE("orderly rankings compare by order first, elimination rankings by priority") {
  Symbols s;
  auto orderly = Ranking::orderly({s.x, s.y});
  CHECK(orderly.compare(DerivativeSymbol(s.y, 2), DerivativeSymbol(s.x, 1)) > 0);
  CHECK(orderly.compare(DerivativeSymbol(s.x, 1), DerivativeSymbol(s.y, 1)) > 0);
  auto elim = Ranking::elimination({s.x, s.y});
  CHECK(elim.compare(DerivativeSymbol(s.x), DerivativeSymbol(s.y, 7)) > 0);
  CHECK_THROWS_AS(elim.compare(DerivativeSymbol(s.a), DerivativeSymbol(s.x)), UnrankedIndeterminate);
}

TEST_CASE("leader, initial and separant decompose the polynomial") {
  Symbols s;
  testing::Gen g(22);
  for (const auto& r : rankings(s)) {
    for (int n = 0; n < 60; ++n) {
      auto p = g.poly(s.all(), 3, 3, 5);
      if (p.is_constant()) continue;
      auto is = initial_and_separant(p, r);
      CHECK(is.leader == leader(p, r));
      for (auto sym : p.symbols()) CHECK(r.compare(sym, is.leader) <= 0);
      CHECK(is.degree == p.degree_in(is.leader));
      CHECK(is.separant == partial(p, is.leader));
      CHECK_FALSE(is.initial.is_zero());
      CHECK_FALSE(is.initial.contains(is.leader));
      auto rest = p - is.initial * DiffPolynomial(is.leader).pow(is.degree);
      CHECK(rest.degree_in(is.leader) < is.degree);
    }
  }
  CHECK_THROWS_AS(leader(DiffPolynomial(3), Ranking::orderly({})), ConstantPolynomial);
}

TEST_CASE("leading_term_wrt reassembles the expression") {
  Symbols s;
  testing::Gen g(23);
  for (int n = 0; n < 60; ++n) {
    auto e = g.rational_expr(s.all(), 3, 2, 4);
    if (e.num().order_of(s.a) < 0) continue;
    auto r = elimination_ranking_for(e, s.a);
    auto ld = leading_term_wrt(e, s.a, r);
    CHECK(ld.leader.base == s.a);
    CHECK(e == ld.initial * RationalExpr(DiffPolynomial(ld.leader)).pow(static_cast<int>(ld.degree)) + ld.remainder);
  }
}

TEST_CASE("leading term through defined coefficients") {
  parse_document("free: lb1 lb2 lb3;");
  auto A = define_symbol("LA", P("(lb2 - lb3)/(lb2 - lb1)"));
  auto lb3 = *Indeterminate::find("lb3");
  auto KA = RationalExpr::symbol(A);
  auto ld = leading_term_wrt(KA, lb3, elimination_ranking_for(KA, lb3));
  CHECK(ld.leader == DerivativeSymbol(lb3, 0));
  CHECK(ld.degree == 1);
  CHECK(equal_exact(ld.initial, P("-1/(lb2 - lb1)")));
  // B = 2 A'/A carries lb3' with initial -2/(lb2 - lb3).
  auto B = RationalExpr(2) * derive_rational(KA) / KA;
  auto lb = leading_term_wrt(B, lb3, elimination_ranking_for(B, lb3));
  CHECK(lb.leader == DerivativeSymbol(lb3, 1));
  CHECK(equal_exact(lb.initial, P("-2/(lb2 - lb3)")));
  CHECK(structural_order(B, lb3) == 1);
  auto others = Ranking::elimination({lb3, *Indeterminate::find("lb1"), *Indeterminate::find("lb2")});
  CHECK_THROWS_AS(leading_term_wrt(P("lb1 + lb2"), lb3, others), TargetAbsent);
}

TEST_CASE("certificates are sound and re-check") {
  Symbols s;
  testing::Gen g(24);
  for (int n = 0; n < 60; ++n) {
    auto e = g.rational_expr({s.a, s.b}, 3, 2, 4);
    if (e.formally_zero()) continue;
    for (auto mode : {CertifyMode::exact, CertifyMode::leading, CertifyMode::jet}) {
      CertifyOptions o;
      o.mode = mode;
      o.seed = static_cast<std::uint64_t>(n);
      auto c = certify_nonzero(e, o);
      CHECK(recheck(c, e));
      CHECK_FALSE(is_zero(e));
      if (mode == CertifyMode::jet) CHECK(c.method == CertMethod::jet_witness);
    }
  }
}

TEST_CASE("certificates do not transfer and zero cannot be certified") {
  Symbols s;
  auto e = P("ra' - rb"), f = P("ra' - ra'");
  for (auto mode : {CertifyMode::exact, CertifyMode::leading, CertifyMode::jet}) {
    CertifyOptions o;
    o.mode = mode;
    auto c = certify_nonzero(e, o);
    CHECK_FALSE(recheck(c, f));
    CHECK_THROWS_AS(certify_nonzero(f, o), CertificationFailed);
  }
  auto k = define_symbol("Kcert", P("ra - rb"));
  auto hidden = RationalExpr::symbol(k) - P("ra") + P("rb");
  CHECK_THROWS_AS(certify_nonzero(hidden), CertificationFailed);
  auto by_jet = certify_nonzero_by_jet(e, 3, 1);
  REQUIRE(by_jet);
  by_jet->witness = JetAssignment();
  CHECK_FALSE(recheck(*by_jet, e));
}
