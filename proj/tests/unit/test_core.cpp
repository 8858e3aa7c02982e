#include "doctest.h"

#include "delta/core/definitions.hpp"
#include "delta/core/format.hpp"
#include "delta/core/jet.hpp"
#include "delta/core/zero_test.hpp"
#include "delta/frontend/parser.hpp"

using namespace delta;

namespace {

RationalExpr P(const char* s) { return parse_expression(s); }

}  // namespace

TEST_CASE("Leibniz rule on a product of two factors") {
  parse_document("free: a b; vars: x;");
  auto e = P("x*x'");
  CHECK(derive_rational(e) == P("x'^2 + x*x''"));
  CHECK(to_string(derive_rational(e)) == "x*x'' + x'^2");
}

TEST_CASE("quotient derivative is exact") {
  parse_document("free: a b; vars: x;");
  auto e = P("a/b");
  CHECK(derive_rational(e) == P("(a'*b - a*b')/b^2"));
}

TEST_CASE("substitution differentiates the replacement") {
  parse_document("free: a b; vars: x y;");
  auto e = P("x'' + a*x");
  auto r = substitute(e, *Indeterminate::find("x"), P("y + b*y'"));
  CHECK(r == P("y'' + b''*y' + 2*b'*y'' + b*y''' + a*y + a*b*y'"));
}

TEST_CASE("defined symbols expand and evaluate consistently") {
  parse_document("free: a b; vars: x;");
  auto k = define_symbol("Ktest", P("a/(a - b)"));
  auto e = RationalExpr::symbol(k, 2) - derive_rational(P("a/(a - b)"), 2);
  CHECK_FALSE(e.formally_zero());
  CHECK(expand_definitions(e).formally_zero());
  CHECK(is_zero(e));
  JetEvaluator ev(JetSampler(7));
  auto v1 = ev.evaluate(RationalExpr::symbol(k, 2));
  auto v2 = ev.evaluate(derive_rational(P("a/(a - b)"), 2));
  CHECK(v1 == v2);
}

TEST_CASE("printer output parses back") {
  parse_document("free: a b; vars: x;");
  for (const char* s : {"x^(5)*a - 3/4*b'^2", "(a + b)/(a - b)", "-x/(2*a)", "a/b^2", "x'''*x^(4)^2 + 7"}) {
    auto e = P(s);
    CHECK(P(to_string(e).c_str()) == e);
    CHECK(to_string(P(to_string(e).c_str())) == to_string(e));
  }
}

// ---------------------------------------------------------------------------
// Properties over generated values.

#include "delta/core/errors.hpp"
#include "delta/core/limits.hpp"
#include "support/generators.hpp"

namespace {

struct Symbols {
  Indeterminate x, y, a, b;
  Symbols() {
    parse_document("free: pa pb; vars: px py;");
    x = *Indeterminate::find("px");
    y = *Indeterminate::find("py");
    a = *Indeterminate::find("pa");
    b = *Indeterminate::find("pb");
  }
  std::vector<Indeterminate> all() const { return {x, y, a, b}; }
};

}  // namespace

TEST_CASE("ring axioms on random polynomials") {
  Symbols s;
  testing::Gen g(11);
  for (int n = 0; n < 100; ++n) {
    auto p = g.poly(s.all(), 3, 3, 5), q = g.poly(s.all(), 3, 3, 5), r = g.poly(s.all(), 3, 3, 5);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((p - p).is_zero());
    CHECK(arithmetic(p, q, ArithOp::sub) == p - q);
    CHECK(p.pow(3) == p * p * p);
  }
}

TEST_CASE("derivation is additive and satisfies Leibniz") {
  Symbols s;
  testing::Gen g(12);
  for (int n = 0; n < 100; ++n) {
    auto p = g.poly(s.all(), 3, 3, 5), q = g.poly(s.all(), 3, 3, 5);
    CHECK(derive(p + q) == derive(p) + derive(q));
    CHECK(derive(p * q) == derive(p) * q + p * derive(q));
    CHECK(derive(p, 3) == derive(derive(derive(p))));
  }
}

TEST_CASE("rational derivative matches the quotient rule") {
  Symbols s;
  testing::Gen g(13);
  for (int n = 0; n < 60; ++n) {
    auto p = g.poly(s.all(), 2, 2, 4);
    auto q = g.nonzero_poly(s.all(), 2, 2, 4);
    RationalExpr e(p, q);
    CHECK(derive_rational(e) == RationalExpr(derive(p) * q - p * derive(q), q * q));
    CHECK(e * e.inverse() == RationalExpr(1));
  }
}

TEST_CASE("partial derivative agrees with a difference quotient on a line") {
  // p(s + t) - p(s) - t dp/ds is divisible by t^2 for polynomial p.
  Symbols s;
  testing::Gen g(14);
  Indeterminate t = Indeterminate::free("ptstep");
  for (int n = 0; n < 50; ++n) {
    auto p = g.poly(s.all(), 2, 3, 5);
    DerivativeSymbol v(s.x, static_cast<std::uint32_t>(g.uniform(0, 2)));
    auto shifted = substitute_symbols(p, [&](DerivativeSymbol d) -> std::optional<RationalExpr> {
      if (d == v) return RationalExpr(DiffPolynomial(v) + DiffPolynomial::symbol(t));
      return std::nullopt;
    });
    auto rest = shifted - RationalExpr(p) - RationalExpr(DiffPolynomial::symbol(t) * partial(p, v));
    REQUIRE(rest.is_polynomial());
    auto by_t2 = rest.num().coefficient(DerivativeSymbol(t), 1);
    CHECK(by_t2.is_zero());
    CHECK(rest.num().coefficient(DerivativeSymbol(t), 0).is_zero());
  }
}

TEST_CASE("substitution commutes with derivation") {
  Symbols s;
  testing::Gen g(15);
  for (int n = 0; n < 40; ++n) {
    auto e = g.rational_expr(s.all(), 2, 2, 3);
    RationalExpr r = g.poly({s.y, s.a, s.b}, 2, 1, 3);
    CHECK(substitute(derive_rational(e), s.x, r) == derive_rational(substitute(e, s.x, r)));
  }
}

TEST_CASE("parser examples") {
  parse_document("free: alpha b1 b2; vars: x;");
  auto p = P("x'' + x^2 - alpha");
  CHECK(p.is_polynomial());
  CHECK(p.num().size() == 3);
  auto q = P("x^(3) * b1' / (b2 - b1)");
  CHECK_FALSE(q.is_polynomial());
  CHECK(q.num().order_of(*Indeterminate::find("x")) == 3);
  CHECK_THROWS_AS(P("x +* 1"), SyntaxError);
  CHECK_THROWS_AS(P("undeclared_name + 1"), UnknownIndeterminate);
  CHECK_THROWS_AS(P("2x"), SyntaxError);
}

TEST_CASE("syntax errors carry a location and the expected set") {
  parse_document("free: a; vars: x;");
  try {
    parse_document("free: a; vars: x;\nx + a\nx * * a\n");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 5);
    CHECK_FALSE(e.expected().empty());
  }
}

TEST_CASE("jet evaluation is a ring homomorphism") {
  Symbols s;
  testing::Gen g(16);
  JetEvaluator ev(JetSampler(99));
  for (int n = 0; n < 60; ++n) {
    auto p = g.rational_expr(s.all(), 3, 2, 3), q = g.rational_expr(s.all(), 3, 2, 3);
    try {
      CHECK(ev.evaluate(p + q) == ev.evaluate(p) + ev.evaluate(q));
      CHECK(ev.evaluate(p * q) == ev.evaluate(p) * ev.evaluate(q));
    } catch (const DenominatorVanished&) {
    }
  }
}

TEST_CASE("jet evaluation of defined symbols follows their definitions") {
  Symbols s;
  testing::Gen g(17);
  for (int n = 0; n < 30; ++n) {
    auto d = g.rational_expr({s.a, s.b}, 2, 2, 3);
    auto k = define_symbol("Kjet", d);
    JetEvaluator ev(JetSampler(static_cast<std::uint64_t>(n)));
    for (unsigned j = 0; j <= 3; ++j) {
      try {
        CHECK(ev.evaluate(RationalExpr::symbol(k, j)) == ev.evaluate(derive_rational(d, j)));
      } catch (const DenominatorVanished&) {
      }
    }
  }
}

TEST_CASE("jet samples depend only on seed, stream, name and order") {
  Symbols s;
  JetSampler a(5, 1), b(5, 1), c(6, 1);
  CHECK(a.value(DerivativeSymbol(s.a, 2)) == b.value(DerivativeSymbol(s.a, 2)));
  CHECK(a.value(DerivativeSymbol(s.a, 2)) != c.value(DerivativeSymbol(s.a, 2)));
  auto e = P("pa'' - pb");
  auto w1 = random_nonzero_witness(e, 5, 3), w2 = random_nonzero_witness(e, 5, 3);
  REQUIRE(w1);
  CHECK(*w1 == *w2);
  CHECK(jet_eval(e, *w1) != 0);
  CHECK_FALSE(random_nonzero_witness(RationalExpr(), 5, 3));
}

TEST_CASE("is_zero decides hidden zeros behind definitions") {
  Symbols s;
  testing::Gen g(18);
  for (int n = 0; n < 30; ++n) {
    auto d = g.rational_expr({s.a, s.b}, 2, 2, 3);
    auto k = define_symbol("Khid", d);
    auto K = RationalExpr::symbol(k);
    CHECK(is_zero(derive_rational(K, 2) - derive_rational(d, 2)));
    CHECK(equal_exact(K * K, d * d));
    if (!d.formally_zero()) CHECK_FALSE(is_zero(K - d + RationalExpr(1)));
  }
}

TEST_CASE("is_zero unfolds the newest name before expanding") {
  Symbols s;
  auto k1 = define_symbol("Kdeep", P("(pa + pb + 1)^3"));
  auto k2 = define_symbol("Kdeep", RationalExpr::symbol(k1).pow(2) + P("pa'"));
  auto k3 = define_symbol("Kdeep", RationalExpr::symbol(k2).pow(2) + P("pb"));
  auto hidden = derive_rational(RationalExpr::symbol(k3)) - derive_rational(definition_of(k3));
  Limits l = limits();
  l.max_terms = 40;
  ScopedLimits guard(l);
  CHECK_THROWS_AS(expand_definitions(RationalExpr::symbol(k3)), ResourceLimit);
  CHECK(is_zero(hidden));
  CHECK_FALSE(is_zero(hidden + RationalExpr::symbol(k1)));
}

TEST_CASE("term cap raises ResourceLimit") {
  Symbols s;
  Limits l = limits();
  l.max_terms = 50;
  ScopedLimits guard(l);
  auto p = P("(px + py + pa + pb + 1)");
  CHECK_THROWS_AS(p.num().pow(6), ResourceLimit);
}
