#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "delta/core/errors.hpp"
#include "delta/core/rational.hpp"

namespace delta {

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, std::string found, std::vector<std::string> expected);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_, column_;
  std::vector<std::string> expected_;
};

struct ParsedItem {
  RationalExpr lhs;
  std::optional<RationalExpr> rhs;  // present for `lhs = rhs`
  int line = 0;
};

struct ParsedDocument {
  std::vector<Indeterminate> free;
  std::vector<Indeterminate> vars;
  std::vector<ParsedItem> items;
};

// Grammar:
//   document  := { directive } [ item { sep item } ]
//   directive := ("free" | "vars") ":" { ident [","] } ";"
//   item      := expr [ "=" expr ]           sep := ";" | newline
//   expr      := term { ("+" | "-") term }
//   term      := unary { ("*" | "/") unary }
//   unary     := "-" unary | power
//   power     := primary { "^" integer }
//   primary   := integer | symbol | "(" expr ")"
//   symbol    := ident [ "'" | "''" | "'''" | "^(" integer ")" ]
// Identifiers must be declared in the preamble or already registered.
ParsedDocument parse_document(std::string_view text);
RationalExpr parse_expression(std::string_view text);

}  // namespace delta
