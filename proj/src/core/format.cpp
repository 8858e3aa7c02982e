#include "delta/core/format.hpp"

#include <ostream>

namespace delta {

std::string to_string(DerivativeSymbol s) {
  std::string out = s.base.name();
  if (s.order == 0) return out;
  if (s.order <= 3) return out + std::string(s.order, '\'');
  return out + "^(" + std::to_string(s.order) + ")";
}

std::string to_string(const Monomial& m) {
  std::string out;
  for (const auto& f : m) {
    if (!out.empty()) out += '*';
    out += to_string(DerivativeSymbol::from_key(f.key));
    if (f.exp > 1) out += "^" + std::to_string(f.exp);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

std::string to_string(const DiffPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    bool neg = c < 0;
    mpq_class a = abs(c);
    std::string body;
    if (m.is_one()) body = a.get_str();
    else if (a == 1) body = to_string(m);
    else body = a.get_str() + "*" + to_string(m);
    if (first) out += neg ? "-" + body : body;
    else out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

std::string to_string(const RationalExpr& e) {
  if (e.is_polynomial()) return to_string(e.num());
  std::string n = to_string(e.num());
  if (e.num().size() > 1) n = "(" + n + ")";
  std::string d = to_string(e.den());
  const auto& dt = e.den().terms();
  bool bare = dt.size() == 1 && dt[0].second == 1 && dt[0].first.size() == 1;
  if (!bare) d = "(" + d + ")";
  return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const DiffPolynomial& p) { return os << to_string(p); }
std::ostream& operator<<(std::ostream& os, const RationalExpr& e) { return os << to_string(e); }

}  // namespace delta
