#pragma once

#include <string>
#include <vector>

#include "delta/core/polynomial.hpp"

namespace delta {

struct GenericPolynomialSpec {
  unsigned order = 1;   // h: highest derivative of x
  unsigned degree = 2;  // d: total degree bound
  std::string prefix = "alpha";
  std::string variable = "x";
};

// f = constant + sum_n sum_j coefficient[n][j] * monomials[n][j], where
// monomials[n] are the monomials of degree 1..d whose highest derivative is
// x^(n), listed by degree and then lexicographically (lower orders first).
struct GenericPolynomial {
  DiffPolynomial f;
  Indeterminate x;
  Indeterminate constant;
  std::vector<std::vector<Monomial>> monomials;
  std::vector<std::vector<Indeterminate>> coefficients;

  std::size_t monomial_count() const;
};

// C(d+h+1, h+1) - 1 non-constant monomials; ResourceLimit past the term cap.
GenericPolynomial generic_poly(const GenericPolynomialSpec& spec);

}  // namespace delta
