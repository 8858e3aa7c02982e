#include "delta/core/jet.hpp"

#include "delta/core/definitions.hpp"
#include "delta/core/errors.hpp"
#include "delta/core/format.hpp"

namespace delta {
namespace {

std::uint64_t splitmix(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

mpq_class factorial(std::size_t n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return mpq_class(f);
}

using Series = std::vector<mpq_class>;

Series mul(const Series& a, const Series& b, std::size_t len) {
  Series r(len);
  for (std::size_t i = 0; i < len && i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < len && j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series divide(const Series& n, const Series& d, std::size_t len) {
  if (d.empty() || d[0] == 0) throw DenominatorVanished("denominator vanishes at the jet");
  Series q(len);
  mpq_class inv = 1 / d[0];
  for (std::size_t k = 0; k < len; ++k) {
    mpq_class acc = k < n.size() ? n[k] : mpq_class(0);
    for (std::size_t j = 1; j <= k && j < d.size(); ++j) acc -= d[j] * q[k - j];
    q[k] = acc * inv;
  }
  return q;
}

}  // namespace

void JetAssignment::set(DerivativeSymbol s, mpq_class v) { values_[s.key()] = std::move(v); }

const mpq_class* JetAssignment::find(DerivativeSymbol s) const {
  auto it = values_.find(s.key());
  return it == values_.end() ? nullptr : &it->second;
}

std::uint32_t JetAssignment::truncation() const {
  std::uint32_t n = 0;
  for (const auto& [k, v] : values_) n = std::max(n, key_order(k));
  return n;
}

mpq_class JetSampler::value(DerivativeSymbol s) const {
  std::uint64_t state = seed_ * 0xD1B54A32D192ED03ull ^ stream_ * 0x8CB92BA72F3D8DD7ull ^
                        fnv1a(s.base.name()) ^ (static_cast<std::uint64_t>(s.order) << 48);
  auto span = static_cast<std::uint64_t>(2 * bound_ + 1);
  auto draw = [&] { return static_cast<std::int64_t>(splitmix(state) % span) - bound_; };
  std::int64_t num = draw();
  std::int64_t den = 0;
  while (den == 0) den = draw();
  mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

mpq_class JetEvaluator::base_value(DerivativeSymbol s) {
  if (const auto* v = assignment_.find(s)) return *v;
  if (!sampler_) throw Error("jet assigns no value to " + to_string(s));
  mpq_class v = sampler_->value(s);
  assignment_.set(s, v);
  return v;
}

mpq_class JetEvaluator::value(DerivativeSymbol s) {
  if (!s.base.is_defined()) return base_value(s);
  const auto& ser = defined_series(s.base, s.order + 1);
  return ser[s.order] * factorial(s.order);
}

const JetEvaluator::Series& JetEvaluator::defined_series(Indeterminate k, std::size_t len) {
  auto it = defined_.find(k.id());
  if (it != defined_.end() && it->second.size() >= len) return it->second;
  Series s = series(definition_of(k), len);
  auto& slot = defined_[k.id()];
  slot = std::move(s);
  return slot;
}

JetEvaluator::Series JetEvaluator::symbol_series(DerivativeSymbol s, std::size_t len) {
  Series r(len);
  if (!s.base.is_defined()) {
    for (std::size_t k = 0; k < len; ++k)
      r[k] = base_value(s.derivative(static_cast<std::uint32_t>(k))) / factorial(k);
    return r;
  }
  const Series& full = defined_series(s.base, len + s.order);
  // d^i/dt^i of sum a_n t^n has coefficient a_{k+i} (k+i)!/k! at t^k.
  for (std::size_t k = 0; k < len; ++k) {
    mpz_class f = 1;
    for (std::size_t j = k + 1; j <= k + s.order; ++j) f *= static_cast<unsigned long>(j);
    r[k] = full[k + s.order] * f;
  }
  return r;
}

JetEvaluator::Series JetEvaluator::series(const DiffPolynomial& p, std::size_t len) {
  Series total(len);
  std::unordered_map<std::uint32_t, Series> base;
  for (const auto& [m, c] : p.terms()) {
    Series prod(len);
    prod[0] = c;
    for (const auto& f : m) {
      auto it = base.find(f.key);
      if (it == base.end()) it = base.emplace(f.key, symbol_series(DerivativeSymbol::from_key(f.key), len)).first;
      for (std::uint32_t e = 0; e < f.exp; ++e) prod = mul(prod, it->second, len);
    }
    for (std::size_t k = 0; k < len; ++k) total[k] += prod[k];
  }
  return total;
}

JetEvaluator::Series JetEvaluator::series(const RationalExpr& e, std::size_t len) {
  Series n = series(e.num(), len);
  if (e.is_polynomial()) return n;
  return divide(n, series(e.den(), len), len);
}

mpq_class JetEvaluator::evaluate(const DiffPolynomial& p) {
  mpq_class total = 0;
  std::unordered_map<std::uint32_t, mpq_class> vals;
  for (const auto& [m, c] : p.terms()) {
    mpq_class prod = c;
    for (const auto& f : m) {
      auto it = vals.find(f.key);
      if (it == vals.end()) it = vals.emplace(f.key, value(DerivativeSymbol::from_key(f.key))).first;
      for (std::uint32_t e = 0; e < f.exp; ++e) prod *= it->second;
    }
    total += prod;
  }
  return total;
}

mpq_class JetEvaluator::evaluate(const RationalExpr& e) {
  mpq_class d = evaluate(e.den());
  if (d == 0) throw DenominatorVanished("denominator vanishes at the jet");
  mpq_class n = evaluate(e.num());
  return n / d;
}

mpq_class jet_eval(const RationalExpr& e, const JetAssignment& a) { return JetEvaluator(a).evaluate(e); }

std::optional<JetAssignment> random_nonzero_witness(const RationalExpr& e, int trials, std::uint64_t seed) {
  if (e.formally_zero()) return std::nullopt;
  for (int t = 0; t < trials; ++t) {
    for (int attempt = 0; attempt <= 5; ++attempt) {
      JetEvaluator ev(JetSampler(seed, static_cast<std::uint64_t>(t) * 8 + static_cast<std::uint64_t>(attempt)));
      try {
        if (ev.evaluate(e) != 0) return ev.assignment();
        break;
      } catch (const DenominatorVanished&) {
      }
    }
  }
  return std::nullopt;
}

}  // namespace delta
