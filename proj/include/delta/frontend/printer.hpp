#pragma once

#include <string>
#include <vector>

#include "delta/elimination/substitution.hpp"
#include "delta/tangent/system.hpp"

namespace delta {

// Sums of coefficient*variable terms, highest derivative first; "0" when empty.
// The output parses back with parse_document.
std::string to_string(const OperatorMap& side);
std::string to_string(const LinearEquation& eq);
std::vector<std::string> to_strings(const LinearDiffSystem& sys);
// "u0 = u1 + v0"
std::string to_string(const LinearSubstitution& s);
// "K4_1 := (b2 - b3)/(b2 - b1)"
std::string definition_string(Indeterminate k);

// Preamble declaring the free and dependent symbols of a system.
std::string preamble(const LinearDiffSystem& sys);

}  // namespace delta
