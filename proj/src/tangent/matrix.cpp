#include "delta/tangent/matrix.hpp"

#include <algorithm>
#include <set>

namespace delta {

PolyMatrix interdefinability_matrix(const std::vector<Indeterminate>& points, const std::vector<unsigned>& exponents,
                                    MatrixMode mode) {
  if (std::set<unsigned>(exponents.begin(), exponents.end()).size() != exponents.size())
    throw DuplicateExponents("exponents must be distinct");
  if (points.size() != exponents.size()) throw Error("matrix must be square");
  PolyMatrix m(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    DiffPolynomial a = DiffPolynomial::symbol(points[i]);
    for (auto j : exponents) {
      if (mode == MatrixMode::weighted_powers) {
        if (j == 0) throw Error("weighted powers need positive exponents");
        m[i].push_back(a.pow(j - 1) * mpq_class(j));
      } else {
        m[i].push_back(a.pow(j));
      }
    }
  }
  return m;
}

DiffPolynomial determinant(PolyMatrix m) {
  std::size_t n = m.size();
  if (n == 0) return DiffPolynomial(1);
  DiffPolynomial prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        DiffPolynomial t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = t.divide_exact(prev);
        if (!q) throw Error("fraction-free elimination: inexact division");
        m[i][j] = std::move(*q);
      }
      m[i][k] = DiffPolynomial();
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

MatrixReport interdefinability_matrix_check(const std::vector<Indeterminate>& points,
                                            const std::vector<unsigned>& exponents, MatrixMode mode) {
  MatrixReport r;
  r.matrix = interdefinability_matrix(points, exponents, mode);
  r.determinant = determinant(r.matrix);
  r.invertible = !r.determinant.is_zero();
  return r;
}

std::optional<std::vector<unsigned>> first_invertible_columns(const std::vector<Indeterminate>& points,
                                                              const std::vector<unsigned>& candidates,
                                                              MatrixMode mode) {
  std::size_t m = points.size(), n = candidates.size();
  if (m > n) return std::nullopt;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), true);
  do {
    std::vector<unsigned> cols;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) cols.push_back(candidates[i]);
    if (interdefinability_matrix_check(points, cols, mode).invertible) return cols;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return std::nullopt;
}

}  // namespace delta
