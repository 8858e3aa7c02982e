#include "delta/elimination/m_matrix.hpp"

#include <map>

#include "delta/core/errors.hpp"
#include "delta/core/zero_test.hpp"
#include "delta/elimination/block_system.hpp"

namespace delta {
namespace {

RationalExpr binom(int n, int k) {
  if (k < 0 || k > n) return RationalExpr();
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return RationalExpr(mpq_class(r));
}

RationalExpr nth(const RationalExpr& e, int n) { return n == 0 ? e : derive_rational(e, static_cast<unsigned>(n)); }

}  // namespace

MMatrixReport m_matrix_report(int h, Indeterminate a_l, Indeterminate b_l, Indeterminate bt) {
  if (h < 2) throw Error("M-matrix needs h >= 2");
  MMatrixReport r;
  r.h = h;
  r.a_l = a_l;
  r.b_l = b_l;
  r.bt = bt;
  RationalExpr a = RationalExpr::symbol(a_l), b = RationalExpr::symbol(b_l), t = RationalExpr::symbol(bt);
  RationalExpr lam = b / a, mu = a / t;
  r.m0 = b / t;
  r.m.assign(static_cast<std::size_t>(h), RationalExpr());
  if (h > 1) r.m[1] = RationalExpr(h) * derive_rational(lam) * mu + RationalExpr(h - 1) * lam * derive_rational(mu) + RationalExpr(1);
  for (int i = 2; i < h; ++i) {
    RationalExpr v;
    for (int k = 0; k <= i; ++k) v += binom(h - 1, k) * binom(h, i - k) * nth(lam, i - k) * nth(mu, k);
    r.m[static_cast<std::size_t>(i)] = v;
  }

  std::map<std::pair<int, int>, RationalExpr> mij;
  for (int i = 1; i <= h - 1; ++i) mij[{i, 1}] = r.m[static_cast<std::size_t>(i)];
  for (int j = 2; j <= h - 1; ++j) {
    const RationalExpr& pivot = mij.at({1, j - 1});
    if (is_zero(pivot)) throw DegenerateSubstitution("M_{1," + std::to_string(j - 1) + "}", j);
    for (int i = 1; i <= h - j; ++i)
      mij[{i, j}] = r.m[static_cast<std::size_t>(i)] - (r.m0 / pivot) * mij.at({i + 1, j - 1});
  }

  r.claim_holds = true;
  for (const auto& [ij, v] : mij) {
    MEntry e;
    e.i = ij.first;
    e.j = ij.second;
    e.value = v;
    e.order = v.num().order_of(a_l);
    e.nonzero = !is_zero(v);
    if (!e.nonzero || e.order != e.i + e.j - 1) r.claim_holds = false;
    r.entries.push_back(std::move(e));
  }
  return r;
}

MMatrixReport m_matrix_report(int h) {
  return m_matrix_report(h, Indeterminate::free(unused_name("a_l")), Indeterminate::free(unused_name("b_l")),
                         Indeterminate::free(unused_name("bt_l")));
}

}  // namespace delta
