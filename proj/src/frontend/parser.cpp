#include "delta/frontend/parser.hpp"

#include <cctype>

#include "delta/core/limits.hpp"

namespace delta {
namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

enum class Tok { ident, integer, op, newline, end };

struct Token {
  Tok kind;
  std::string text;
  int line, column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n') {
      out.push_back({Tok::newline, "newline", line, col});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::integer, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::string_view("+-*/^()'=;:,").find(c) != std::string_view::npos) {
      out.push_back({Tok::op, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    throw SyntaxError(l, cl, std::string(1, c), {"expression"});
  }
  out.push_back({Tok::end, "end of input", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  ParsedDocument document() {
    ParsedDocument doc;
    skip_newlines();
    while (peek().kind == Tok::ident && (peek().text == "free" || peek().text == "vars") &&
           peek(1).kind == Tok::op && peek(1).text == ":") {
      bool is_free = peek().text == "free";
      pos_ += 2;
      while (true) {
        skip_newlines();
        if (is_op(";")) {
          ++pos_;
          break;
        }
        if (is_op(",")) {
          ++pos_;
          continue;
        }
        if (peek().kind != Tok::ident) fail({"identifier", "';'"});
        auto kind = is_free ? IndeterminateKind::free : IndeterminateKind::dependent;
        auto x = Indeterminate::declare(peek().text, kind);
        (is_free ? doc.free : doc.vars).push_back(x);
        ++pos_;
      }
      skip_separators();
    }
    while (peek().kind != Tok::end) {
      ParsedItem item;
      item.line = peek().line;
      item.lhs = expr();
      if (is_op("=")) {
        ++pos_;
        item.rhs = expr();
      }
      doc.items.push_back(std::move(item));
      if (peek().kind == Tok::end) break;
      if (peek().kind != Tok::newline && !is_op(";")) fail({"'+'", "'-'", "'*'", "'/'", "'='", "';'", "newline"});
      skip_separators();
    }
    return doc;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is_op(const char* s) const { return peek().kind == Tok::op && peek().text == s; }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(peek().line, peek().column, peek().text, std::move(expected));
  }
  void skip_newlines() {
    while (peek().kind == Tok::newline) ++pos_;
  }
  void skip_separators() {
    while (peek().kind == Tok::newline || is_op(";")) ++pos_;
  }
  // Newlines inside parentheses or after a binary operator continue the expression.
  void continuation() {
    if (depth_ > 0) skip_newlines();
  }

  RationalExpr expr() {
    continuation();
    RationalExpr acc = term();
    while (true) {
      continuation();
      if (is_op("+") || is_op("-")) {
        bool plus = is_op("+");
        ++pos_;
        skip_newlines();
        RationalExpr t = term();
        acc = plus ? acc + t : acc - t;
      } else {
        return acc;
      }
    }
  }

  RationalExpr term() {
    RationalExpr acc = unary();
    while (true) {
      continuation();
      if (is_op("*")) {
        ++pos_;
        skip_newlines();
        acc = acc * unary();
      } else if (is_op("/")) {
        ++pos_;
        skip_newlines();
        const Token& at = peek();
        RationalExpr d = unary();
        if (d.formally_zero()) throw SyntaxError(at.line, at.column, "division by zero", {"nonzero divisor"});
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RationalExpr unary() {
    if (is_op("-")) {
      ++pos_;
      return -unary();
    }
    return power();
  }

  unsigned integer_value(const Token& t) const {
    if (t.text.size() > 9) throw SyntaxError(t.line, t.column, t.text, {"small integer"});
    return static_cast<unsigned>(std::stoul(t.text));
  }

  RationalExpr power() {
    RationalExpr base = primary();
    while (is_op("^")) {
      ++pos_;
      if (peek().kind != Tok::integer) fail({"integer exponent"});
      unsigned e = integer_value(peek());
      if (e > limits().max_degree)
        throw SyntaxError(peek().line, peek().column, peek().text, {"exponent at most " + std::to_string(limits().max_degree)});
      ++pos_;
      base = base.pow(static_cast<int>(e));
    }
    return base;
  }

  RationalExpr primary() {
    const Token& t = peek();
    if (t.kind == Tok::integer) {
      ++pos_;
      return RationalExpr(mpq_class(mpz_class(t.text)));
    }
    if (is_op("(")) {
      ++pos_;
      ++depth_;
      RationalExpr e = expr();
      continuation();
      if (!is_op(")")) fail({"')'", "operator"});
      --depth_;
      ++pos_;
      return e;
    }
    if (t.kind == Tok::ident) {
      auto x = Indeterminate::find(t.text);
      if (!x) throw UnknownIndeterminate(t.text);
      ++pos_;
      std::uint32_t order = 0;
      if (is_op("'")) {
        while (is_op("'")) {
          ++order;
          ++pos_;
        }
        if (order > 3) fail({"at most three primes; use ^(k)"});
      } else if (is_op("^") && peek(1).kind == Tok::op && peek(1).text == "(") {
        pos_ += 2;
        if (peek().kind != Tok::integer) fail({"derivative order"});
        order = integer_value(peek());
        ++pos_;
        if (!is_op(")")) fail({"')'"});
        ++pos_;
      }
      if (order > limits().max_order)
        throw SyntaxError(t.line, t.column, t.text, {"derivative order at most " + std::to_string(limits().max_order)});
      return RationalExpr::symbol(*x, order);
    }
    fail({"integer", "identifier", "'('", "'-'"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

SyntaxError::SyntaxError(int line, int column, std::string found, std::vector<std::string> expected)
    : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": found " + found +
            ", expected " + join(expected)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

ParsedDocument parse_document(std::string_view text) { return Parser(text).document(); }

RationalExpr parse_expression(std::string_view text) {
  auto doc = parse_document(text);
  if (doc.items.size() != 1 || doc.items[0].rhs)
    throw SyntaxError(1, 1, "input", {"exactly one expression"});
  return doc.items[0].lhs;
}

}  // namespace delta
