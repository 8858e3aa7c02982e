#include "delta/tangent/generic.hpp"

#include <algorithm>
#include <functional>

#include "delta/core/errors.hpp"
#include "delta/core/limits.hpp"

namespace delta {
namespace {

// Exponent vectors over x, x', ..., x^(h) with total degree in [1, d].
void enumerate(unsigned h, unsigned d, std::vector<std::vector<unsigned>>& out) {
  std::vector<unsigned> e(h + 1, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
    if (i == h + 1) {
      if (left < d) out.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, d);
}

unsigned highest(const std::vector<unsigned>& e) {
  for (unsigned i = static_cast<unsigned>(e.size()); i-- > 0;)
    if (e[i] > 0) return i;
  return 0;
}

unsigned total(const std::vector<unsigned>& e) {
  unsigned s = 0;
  for (auto v : e) s += v;
  return s;
}

}  // namespace

std::size_t GenericPolynomial::monomial_count() const {
  std::size_t n = 0;
  for (const auto& g : monomials) n += g.size();
  return n;
}

GenericPolynomial generic_poly(const GenericPolynomialSpec& spec) {
  if (spec.degree == 0) throw Error("degree must be positive");
  // C(d+h+1, h+1) - 1, computed without overflow for the sizes we accept.
  mpz_class count;
  mpz_bin_uiui(count.get_mpz_t(), spec.degree + spec.order + 1, spec.order + 1);
  count -= 1;
  if (count > static_cast<unsigned long>(limits().max_terms))
    throw ResourceLimit("generic polynomial would have " + count.get_str() + " monomials");
  if (spec.order > limits().max_order) throw ResourceLimit("order exceeds cap");
  if (spec.degree > limits().max_degree) throw ResourceLimit("degree exceeds cap");

  std::vector<std::vector<unsigned>> exps;
  enumerate(spec.order, spec.degree, exps);
  // Within an order group: by total degree, then lexicographically with
  // x as the most significant variable (x^2 before x*x').
  std::sort(exps.begin(), exps.end(), [](const auto& a, const auto& b) {
    if (highest(a) != highest(b)) return highest(a) < highest(b);
    if (total(a) != total(b)) return total(a) < total(b);
    return a > b;
  });

  GenericPolynomial g;
  g.x = Indeterminate::dependent(spec.variable);
  g.constant = Indeterminate::free(spec.prefix);
  g.monomials.resize(spec.order + 1);
  g.coefficients.resize(spec.order + 1);
  std::vector<DiffPolynomial::Term> terms;
  terms.emplace_back(Monomial(DerivativeSymbol(g.constant)), 1);
  for (const auto& e : exps) {
    unsigned n = highest(e);
    Monomial m;
    for (unsigned i = 0; i <= spec.order; ++i)
      if (e[i] > 0) m = m * Monomial(DerivativeSymbol(g.x, i), e[i]);
    auto j = g.monomials[n].size() + 1;
    auto c = Indeterminate::free(spec.prefix + std::to_string(n) + "_" + std::to_string(j));
    g.monomials[n].push_back(m);
    g.coefficients[n].push_back(c);
    terms.emplace_back(Monomial(DerivativeSymbol(c)) * m, 1);
  }
  g.f = DiffPolynomial::from_terms(std::move(terms));
  return g;
}

}  // namespace delta
