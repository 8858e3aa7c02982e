#pragma once

#include <memory>
#include <optional>
#include <string_view>

#include "delta/core/jet.hpp"
#include "delta/rankings/leading.hpp"

namespace delta {

enum class CertMethod { exact_expansion, leading_term, jet_witness };
std::string_view to_string(CertMethod m);

// Proof that an expression is not identically zero.
//   exact_expansion: the expansion over base symbols has a nonzero numerator.
//   leading_term:    a leader of positive degree whose initial is certified in turn.
//   jet_witness:     an exact rational jet where the value is nonzero.
struct NonzeroCertificate {
  CertMethod method = CertMethod::exact_expansion;
  std::size_t expanded_terms = 0;
  std::optional<Indeterminate> target;
  std::optional<LeadingData> leading;
  std::shared_ptr<const NonzeroCertificate> initial_certificate;
  std::optional<JetAssignment> witness;

  int depth() const { return initial_certificate ? 1 + initial_certificate->depth() : 0; }
};

enum class CertifyMode { exact, leading, jet };

struct CertifyOptions {
  CertifyMode mode = CertifyMode::exact;
  std::uint64_t seed = 1;
  int jet_trials = 20;
  std::size_t expansion_terms = 20'000;
  int max_depth = 4;
};

// Ranking: target first, then the other free indeterminates reachable from e,
// most recently declared first.
Ranking elimination_ranking_for(const RationalExpr& e, Indeterminate target);

NonzeroCertificate certify_nonzero_by_leading_term(const RationalExpr& e, Indeterminate target,
                                                   const CertifyOptions& opts = {});
std::optional<NonzeroCertificate> certify_nonzero_by_expansion(const RationalExpr& e, std::size_t max_terms);
std::optional<NonzeroCertificate> certify_nonzero_by_jet(const RationalExpr& e, int trials, std::uint64_t seed);

// exact:   expansion when it fits, else a leading-term chain, else an exact jet.
// leading: leading-term chain over the most recently declared free indeterminate.
// jet:     exact jet witness.
// Throws CertificationFailed when nothing applies.
NonzeroCertificate certify_nonzero(const RationalExpr& e, const CertifyOptions& opts = {});

// Re-verifies the certificate from scratch without trusting its cached parts.
bool recheck(const NonzeroCertificate& c, const RationalExpr& e);

}  // namespace delta
