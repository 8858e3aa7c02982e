#pragma once

#include <iosfwd>
#include <string>

#include "delta/core/rational.hpp"

namespace delta {

// Output re-parses to the same canonical value.
std::string to_string(DerivativeSymbol s);
std::string to_string(const Monomial& m);
std::string to_string(const mpq_class& q);
std::string to_string(const DiffPolynomial& p);
std::string to_string(const RationalExpr& e);

std::ostream& operator<<(std::ostream& os, const DiffPolynomial& p);
std::ostream& operator<<(std::ostream& os, const RationalExpr& e);

}  // namespace delta
