#include "delta/frontend/trace_json.hpp"

#include <sstream>

#include "delta/core/format.hpp"
#include "delta/frontend/printer.hpp"

namespace delta {

using nlohmann::ordered_json;

std::string_view to_string(OutcomeKind k) {
  return k == OutcomeKind::bijection_with_line ? "bijection-with-line" : "degenerate";
}

ordered_json certificate_json(const NonzeroCertificate& c) {
  ordered_json j;
  j["method"] = std::string(to_string(c.method));
  ordered_json payload;
  switch (c.method) {
    case CertMethod::exact_expansion:
      payload["expanded_terms"] = c.expanded_terms;
      break;
    case CertMethod::jet_witness: {
      ordered_json w = ordered_json::object();
      if (c.witness)
        for (const auto& [key, v] : c.witness->values()) w[to_string(DerivativeSymbol::from_key(key))] = to_string(v);
      payload["witness"] = w;
      break;
    }
    case CertMethod::leading_term: {
      ordered_json chain = ordered_json::array();
      const NonzeroCertificate* cur = &c;
      while (cur && cur->method == CertMethod::leading_term) {
        ordered_json link;
        link["target"] = cur->target ? cur->target->name() : "";
        if (cur->leading) {
          link["leader"] = to_string(cur->leading->leader);
          link["degree"] = cur->leading->degree;
          link["initial"] = to_string(cur->leading->initial);
        }
        chain.push_back(link);
        cur = cur->initial_certificate.get();
      }
      payload["chain"] = chain;
      if (cur) payload["initial_certificate"] = certificate_json(*cur);
      break;
    }
  }
  j["payload"] = payload;
  return j;
}

ordered_json trace_json(const ReductionTrace& t) {
  ordered_json j;
  j["system_initial"] = to_strings(t.initial);
  ordered_json vars = ordered_json::array();
  for (auto v : t.initial.variables) vars.push_back(v.name());
  j["variables"] = vars;

  ordered_json steps = ordered_json::array();
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    ordered_json o;
    o["index"] = i + 1;
    o["kind"] = std::string(to_string(s.kind));
    o["equation"] = s.equation + 1;
    o["variable"] = s.substitution.variable.name();
    o["replacement"] = to_string(s.substitution);
    o["denominator"] = to_string(s.denominator);
    o["removes_equation"] = s.removes_equation;
    o["detour"] = s.detour;
    ordered_json defs = ordered_json::array();
    for (auto k : s.definitions) defs.push_back(k.name());
    o["definitions"] = defs;
    o["certificate"] = certificate_json(s.certificate);
    steps.push_back(o);
  }
  j["steps"] = steps;

  ordered_json snaps = ordered_json::array();
  for (const auto& s : t.snapshots) snaps.push_back(to_strings(s));
  j["snapshots"] = snaps;

  ordered_json defs = ordered_json::array();
  for (auto k : t.definitions) {
    ordered_json d;
    d["name"] = k.name();
    d["definition"] = to_string(*k.definition());
    defs.push_back(d);
  }
  j["definitions"] = defs;

  ordered_json out;
  out["kind"] = std::string(to_string(t.outcome.kind));
  if (!t.outcome.final_equation.lhs.empty() || !t.outcome.final_equation.rhs.empty()) {
    out["final_equation"] = to_string(t.outcome.final_equation);
    out["parameter"] = t.outcome.parameter.name();
    out["determined"] = t.outcome.determined.name();
  }
  if (t.outcome.kind == OutcomeKind::degenerate) {
    out["coefficient"] = t.outcome.coefficient;
    out["vanished_expression"] = t.outcome.vanished_expression;
    out["step"] = t.outcome.step;
    out["recovered"] = t.outcome.recovered;
  }
  j["outcome"] = out;

  ordered_json disc = ordered_json::array();
  for (const auto& d : t.discrepancies) {
    ordered_json o;
    o["coefficient"] = d.coefficient;
    o["printed_formula"] = d.formula;
    o["formula_value"] = to_string(d.formula_value);
    o["oracle_value"] = to_string(d.direct_value);
    disc.push_back(o);
  }
  j["discrepancies"] = disc;

  ordered_json checks;
  checks["oracle_checks"] = t.oracle_checks;
  checks["oracle_failures"] = t.oracle_failures;
  checks["closed_form_checks"] = t.closed_form_checks;
  checks["certificates_rechecked"] = t.certificates_rechecked;
  checks["certificates_ok"] = t.certificates_ok;
  j["checks"] = checks;
  j["notes"] = t.notes;
  return j;
}

std::string emit_trace(const ReductionTrace& t, TraceFormat format) {
  if (format == TraceFormat::json) return trace_json(t).dump(2) + "\n";
  std::ostringstream os;
  os << "initial system\n";
  for (const auto& line : to_strings(t.initial)) os << "  " << line << "\n";
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    os << "\nstep " << i + 1 << " (" << to_string(s.kind) << (s.detour ? ", detour" : "") << "): "
       << to_string(s.substitution) << "\n";
    os << "  denominator " << to_string(s.denominator) << " certified by " << to_string(s.certificate.method) << "\n";
    for (auto k : s.definitions) os << "  " << definition_string(k) << "\n";
    if (i < t.snapshots.size())
      for (const auto& line : to_strings(t.snapshots[i])) os << "  " << line << "\n";
  }
  os << "\noutcome: " << to_string(t.outcome.kind);
  if (t.outcome.kind == OutcomeKind::degenerate) {
    os << " (" << t.outcome.coefficient << " vanishes after step " << t.outcome.step << ")";
    if (t.outcome.recovered) os << ", recovered by the alternative substitution";
  }
  os << "\n";
  if (!t.outcome.final_equation.lhs.empty())
    os << "  final equation " << to_string(t.outcome.final_equation) << ", solvable for " << t.outcome.determined.name()
       << "\n";
  for (const auto& d : t.discrepancies)
    os << "  closed form differs: " << d.coefficient << " [" << d.formula << "]\n";
  os << "  oracle checks " << t.oracle_checks << ", failures " << t.oracle_failures.size() << "\n";
  if (t.certificates_rechecked) os << "  certificates " << (t.certificates_ok ? "rechecked" : "FAILED recheck") << "\n";
  return os.str();
}

}  // namespace delta
