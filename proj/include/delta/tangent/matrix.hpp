#pragma once

#include <optional>
#include <vector>

#include "delta/core/errors.hpp"
#include "delta/core/polynomial.hpp"

namespace delta {

class DuplicateExponents : public Error {
 public:
  using Error::Error;
};

// weighted_powers: entry (i, k) = j_k * a_i^(j_k - 1), the tangent
//   coefficient of alpha_j x^j at order 0.
// powers: entry (i, k) = a_i^(j_k).
enum class MatrixMode { weighted_powers, powers };

using PolyMatrix = std::vector<std::vector<DiffPolynomial>>;

struct MatrixReport {
  PolyMatrix matrix;
  DiffPolynomial determinant;
  bool invertible = false;
};

PolyMatrix interdefinability_matrix(const std::vector<Indeterminate>& points, const std::vector<unsigned>& exponents,
                                    MatrixMode mode);
MatrixReport interdefinability_matrix_check(const std::vector<Indeterminate>& points,
                                            const std::vector<unsigned>& exponents, MatrixMode mode);

// Fraction-free elimination with exact polynomial division.
DiffPolynomial determinant(PolyMatrix m);

// First size-m subset of `candidates` (in lexicographic order) whose matrix
// is invertible.
std::optional<std::vector<unsigned>> first_invertible_columns(const std::vector<Indeterminate>& points,
                                                              const std::vector<unsigned>& candidates,
                                                              MatrixMode mode);

}  // namespace delta
