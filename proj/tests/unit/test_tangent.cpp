#include "doctest.h"

#include <functional>
#include <numeric>

#include "delta/core/errors.hpp"
#include "delta/frontend/parser.hpp"
#include "delta/tangent/generic.hpp"
#include "delta/tangent/matrix.hpp"
#include "delta/tangent/tangent.hpp"
#include "support/generators.hpp"

using namespace delta;

namespace {

RationalExpr P(const char* s) { return parse_expression(s); }

// Sum over permutations; the oracle for the fraction-free determinant.
DiffPolynomial leibniz_determinant(const PolyMatrix& m) {
  std::vector<std::size_t> perm(m.size());
  std::iota(perm.begin(), perm.end(), 0);
  DiffPolynomial det;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    DiffPolynomial t(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < perm.size(); ++i) t *= m[i][perm[i]];
    det += t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

std::vector<Indeterminate> points(unsigned m) {
  std::vector<Indeterminate> a;
  for (unsigned i = 1; i <= m; ++i) a.push_back(Indeterminate::free("ta" + std::to_string(i)));
  return a;
}

unsigned long binomial(unsigned n, unsigned k) {
  unsigned long r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("generic polynomial monomial count and grouping") {
  for (unsigned h = 0; h <= 3; ++h)
    for (unsigned d = 1; d <= 4; ++d) {
      GenericPolynomialSpec spec;
      spec.order = h;
      spec.degree = d;
      spec.prefix = "gal";
      spec.variable = "gx";
      auto g = generic_poly(spec);
      CHECK(g.monomial_count() == binomial(d + h + 1, h + 1) - 1);
      CHECK(g.f.size() == g.monomial_count() + 1);
      for (unsigned n = 0; n <= h; ++n)
        for (std::size_t j = 0; j < g.monomials[n].size(); ++j) {
          DiffPolynomial m = DiffPolynomial::monomial(g.monomials[n][j]);
          CHECK(m.order_of(g.x) == static_cast<int>(n));
          CHECK(m.total_degree() <= d);
          if (j > 0) CHECK(DiffPolynomial::monomial(g.monomials[n][j - 1]).total_degree() <= m.total_degree());
        }
    }
  GenericPolynomialSpec spec;
  spec.order = 1;
  spec.degree = 2;
  spec.prefix = "gal";
  spec.variable = "gx";
  auto g = generic_poly(spec);
  // Order 0: x, x^2. Order 1: x', then x^... by degree with x most significant.
  REQUIRE(g.monomials[0].size() == 2);
  REQUIRE(g.monomials[1].size() == 3);
  parse_document("vars: gx;");
  CHECK(DiffPolynomial::monomial(g.monomials[1][1]) == P("gx*gx'").num());
  CHECK(DiffPolynomial::monomial(g.monomials[1][2]) == P("gx'^2").num());
}

TEST_CASE("build_Vm copies the equation and drops the constant") {
  parse_document("free: alpha; vars: x;");
  auto V = build_Vm(P("x'' + x^2 - alpha"), *Indeterminate::find("x"), 3, *Indeterminate::find("alpha"));
  REQUIRE(V.equations.size() == 3);
  CHECK(V.variables.size() == 4);
  CHECK(V.equations[2] == P("x3'' + x3^2 - y"));
}

TEST_CASE("tangent coefficients equal partial-then-substitute") {
  testing::Gen g(31);
  parse_document("free: tk1 tk2 tb; vars: tx;");
  Indeterminate x = *Indeterminate::find("tx");
  std::vector<Indeterminate> coeffs = {*Indeterminate::find("tk1"), *Indeterminate::find("tk2")};
  for (int n = 0; n < 40; ++n) {
    int h = g.uniform(1, 3), d = g.uniform(1, 3);
    // Random f over x with free coefficients; each term carries x.
    DiffPolynomial f;
    for (int t = 0; t < 4; ++t) {
      auto m = g.monomial({x}, h, d);
      if (m.is_one()) continue;
      f += DiffPolynomial::monomial(m, g.nonzero_rational()) * DiffPolynomial::symbol(g.pick(coeffs));
    }
    if (f.order_of(x) < 0) continue;
    const unsigned m = 2;
    auto V = build_Vm(f, x, m);
    auto pts = points(m);
    std::map<Indeterminate, Indeterminate> point;
    for (unsigned j = 1; j <= m; ++j) point[*Indeterminate::find("tx" + std::to_string(j))] = pts[j - 1];
    auto T = diff_tangent_system(V, point);
    REQUIRE(T.equations.size() == m);
    for (unsigned j = 1; j <= m; ++j) {
      Indeterminate xj = *Indeterminate::find("tx" + std::to_string(j));
      Indeterminate dj = *Indeterminate::find("dtx" + std::to_string(j));
      const auto& eq = T.equations[j - 1];
      for (int k = 0; k <= f.order_of(x); ++k) {
        RationalExpr want = substitute(partial(RationalExpr(f), DerivativeSymbol(x, k)), x, RationalExpr::symbol(pts[j - 1]));
        CHECK(eq.coefficient(dj, k) == want);
        CHECK_FALSE(eq.coefficient(dj, k).has_kind(IndeterminateKind::dependent));
      }
      (void)xj;
    }
  }
}

TEST_CASE("eliminate_y equates left-hand sides and keeps them linear") {
  parse_document("free: alpha; vars: x;");
  auto V = build_Vm(P("x'' + x^3 - alpha"), *Indeterminate::find("x"), 3, *Indeterminate::find("alpha"));
  auto pts = points(3);
  std::map<Indeterminate, Indeterminate> point;
  std::map<Indeterminate, std::string> names;
  for (unsigned j = 1; j <= 3; ++j) {
    point[*Indeterminate::find("x" + std::to_string(j))] = pts[j - 1];
    names[*Indeterminate::find("x" + std::to_string(j))] = "ev" + std::to_string(j);
  }
  auto T = diff_tangent_system(V, point, names);
  auto L = eliminate_y(T, *Indeterminate::find("y"));
  REQUIRE(L.equations.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(L.equations[k].lhs == T.equations[0].lhs);
    CHECK(L.equations[k].rhs == T.equations[k + 1].lhs);
    // y := lhs_1 satisfies every input equation once the output holds.
    CHECK(T.equations[k + 1].lhs.size() == 1);
  }
  for (const auto& eq : L.equations)
    for (auto v : eq.variables()) CHECK(v.name().rfind("ev", 0) == 0);
}

TEST_CASE("Vandermonde-type determinants") {
  auto a = points(4);
  auto two = interdefinability_matrix_check({a[0], a[1]}, {0, 1}, MatrixMode::powers);
  CHECK(two.invertible);
  CHECK(two.determinant == P("ta2 - ta1").num());
  auto three = interdefinability_matrix_check({a[0], a[1], a[2]}, {0, 1, 2}, MatrixMode::powers);
  CHECK(three.determinant == P("(ta2 - ta1)*(ta3 - ta1)*(ta3 - ta2)").num());
  for (auto mode : {MatrixMode::weighted_powers, MatrixMode::powers}) {
    auto four = interdefinability_matrix_check(a, {1, 2, 3, 4}, mode);
    CHECK(four.invertible);
    CHECK(four.determinant == leibniz_determinant(four.matrix));
    CHECK_FALSE(four.determinant.is_zero());
  }
  CHECK_THROWS_AS(interdefinability_matrix_check({a[0], a[1]}, {2, 2}, MatrixMode::powers), DuplicateExponents);
  // Equal rows: a1 twice.
  CHECK_FALSE(interdefinability_matrix_check({a[0], a[0]}, {0, 1}, MatrixMode::powers).invertible);
}

TEST_CASE("fraction-free determinant matches the Leibniz expansion") {
  testing::Gen g(32);
  auto a = points(3);
  for (int n = 0; n < 40; ++n) {
    std::size_t k = static_cast<std::size_t>(g.uniform(1, 4));
    PolyMatrix m(k, std::vector<DiffPolynomial>(k));
    for (auto& row : m)
      for (auto& x : row) x = g.chance(0.2) ? DiffPolynomial() : g.poly(a, 1, 2, 3);
    CHECK(determinant(m) == leibniz_determinant(m));
  }
}

TEST_CASE("first_invertible_columns searches in lexicographic order") {
  auto a = points(3);
  auto cols = first_invertible_columns(a, {1, 2, 3, 4, 5}, MatrixMode::weighted_powers);
  REQUIRE(cols);
  CHECK(*cols == std::vector<unsigned>{1, 2, 3});
}

TEST_CASE("generic polynomials admit invertible coefficient columns at each order") {
  // Columns: d m_k / d x^(n) at x = a_i for the monomials of order n.
  for (unsigned h = 1; h <= 3; ++h)
    for (unsigned m = 2; m <= 3; ++m) {
      GenericPolynomialSpec spec;
      spec.order = h;
      spec.degree = 2 * m;
      spec.prefix = "gq";
      spec.variable = "gy";
      auto g = generic_poly(spec);
      auto a = points(m);
      for (unsigned n = 0; n <= h; ++n) {
        std::vector<std::vector<DiffPolynomial>> cols;
        for (const auto& mono : g.monomials[n]) {
          DiffPolynomial dm = partial(DiffPolynomial::monomial(mono), DerivativeSymbol(g.x, n));
          std::vector<DiffPolynomial> col;
          for (auto ai : a) col.push_back(substitute(RationalExpr(dm), g.x, RationalExpr::symbol(ai)).num());
          cols.push_back(col);
        }
        REQUIRE(cols.size() >= m);
        bool found = false;
        std::vector<std::size_t> pick;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
          if (found) return;
          if (pick.size() == m) {
            PolyMatrix mat(m, std::vector<DiffPolynomial>(m));
            for (unsigned i = 0; i < m; ++i)
              for (unsigned k = 0; k < m; ++k) mat[i][k] = cols[pick[k]][i];
            found = !determinant(mat).is_zero();
            return;
          }
          for (std::size_t i = start; i < cols.size() && !found; ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
          }
        };
        rec(0);
        CHECK_MESSAGE(found, "h=" << h << " m=" << m << " order " << n);
      }
    }
}
