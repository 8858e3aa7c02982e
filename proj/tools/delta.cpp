// Command-line front end. Exit codes: 0 pass or bijection, 2 degenerate, 1 error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "delta/core/format.hpp"
#include "delta/frontend/parser.hpp"
#include "delta/frontend/printer.hpp"
#include "delta/frontend/scenarios.hpp"
#include "delta/frontend/trace_json.hpp"
#include "delta/tangent/tangent.hpp"

namespace {

using namespace delta;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string declaration(const char* key, const std::vector<Indeterminate>& xs) {
  std::string out = key;
  out += ":";
  for (auto x : xs) out += " " + x.name();
  return out + ";";
}

CertifyMode certify_mode(const std::string& s) {
  if (s == "exact") return CertifyMode::exact;
  if (s == "leading") return CertifyMode::leading;
  return CertifyMode::jet;
}

int exit_code(ScenarioStatus s) {
  switch (s) {
    case ScenarioStatus::pass: return 0;
    case ScenarioStatus::degenerate_as_expected: return 2;
    case ScenarioStatus::fail: return 1;
  }
  return 1;
}

int cmd_parse(const std::string& path) {
  auto doc = parse_document(read_input(path));
  std::cout << declaration("free", doc.free) << "\n" << declaration("vars", doc.vars) << "\n";
  for (const auto& it : doc.items) {
    std::cout << to_string(it.lhs);
    if (it.rhs) std::cout << " = " << to_string(*it.rhs);
    std::cout << "\n";
  }
  return 0;
}

int cmd_derive(const std::string& path, unsigned k) {
  auto doc = parse_document(read_input(path));
  for (const auto& it : doc.items) {
    RationalExpr e = it.rhs ? it.lhs - *it.rhs : it.lhs;
    std::cout << to_string(derive_rational(e, k)) << "\n";
  }
  return 0;
}

struct TangentArgs {
  std::string path = "-";
  std::string points;
  std::string names;
  std::string constant;
  bool eliminate = false;
};

int cmd_tangent(const TangentArgs& a) {
  auto doc = parse_document(read_input(a.path));
  if (doc.items.size() != 1 || doc.items[0].rhs || doc.vars.size() != 1)
    throw MalformedSystem("tangent expects one expression f in one declared variable");
  auto pts = split_list(a.points), names = split_list(a.names);
  if (pts.empty()) throw Error("--point needs at least one indeterminate");
  if (!names.empty() && names.size() != pts.size()) throw Error("--names must match --point");
  std::optional<Indeterminate> c;
  if (!a.constant.empty()) {
    c = Indeterminate::find(a.constant);
    if (!c) throw UnknownIndeterminate(a.constant);
  }
  auto V = build_Vm(doc.items[0].lhs, doc.vars[0], static_cast<unsigned>(pts.size()), c);
  std::map<Indeterminate, Indeterminate> point;
  std::map<Indeterminate, std::string> tn;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    auto xj = *Indeterminate::find(doc.vars[0].name() + std::to_string(j + 1));
    point[xj] = Indeterminate::free(pts[j]);
    if (!names.empty()) tn[xj] = names[j];
  }
  auto T = diff_tangent_system(V, point, tn);
  if (a.eliminate) T = eliminate_y(T, *Indeterminate::find("y"));
  std::cout << preamble(T);
  for (const auto& line : to_strings(T)) std::cout << line << "\n";
  return 0;
}

struct ReduceArgs {
  std::string path = "-";
  std::string certify = "exact";
  std::uint64_t seed = 1;
  std::string trace_out;
  std::string format = "text";
};

int cmd_reduce(const ReduceArgs& a) {
  auto doc = parse_document(read_input(a.path));
  ReduceOptions opts;
  opts.certify.mode = certify_mode(a.certify);
  opts.certify.seed = a.seed;
  auto t = reduce_to_line(linear_system(doc), opts);
  TraceFormat f = a.format == "json" ? TraceFormat::json : TraceFormat::text;
  if (!a.trace_out.empty()) write_output(a.trace_out, emit_trace(t, TraceFormat::json));
  std::cout << emit_trace(t, f);
  if (!t.oracle_failures.empty() || (t.certificates_rechecked && !t.certificates_ok)) return 1;
  return t.outcome.kind == OutcomeKind::degenerate ? 2 : 0;
}

struct ScenarioArgs {
  std::string name;
  std::vector<std::string> args;
  std::string certify = "exact";
  std::uint64_t seed = 1;
  std::string json_out;
  bool trace = false;
};

int cmd_scenario(const ScenarioArgs& a) {
  ScenarioOptions opts;
  opts.certify.mode = certify_mode(a.certify);
  opts.certify.seed = a.seed;
  auto r = run_scenario(a.name, a.args, opts);
  std::cout << scenario_report(r);
  if (a.trace) std::cout << emit_trace(r.trace, TraceFormat::text);
  if (!a.json_out.empty()) write_output(a.json_out, scenario_json(r).dump(2) + "\n");
  return exit_code(r.status);
}

int cmd_selftest() {
  struct Case {
    std::string name;
    std::vector<std::string> args;
    ScenarioStatus expected;
  };
  const std::vector<Case> cases = {
      {"sec5", {}, ScenarioStatus::pass},
      {"jfun", {}, ScenarioStatus::degenerate_as_expected},
      {"lemma32", {}, ScenarioStatus::pass},
      {"thm41-matrix", {}, ScenarioStatus::pass},
      {"generic", {"2", "2"}, ScenarioStatus::pass},
  };
  int bad = 0;
  for (const auto& c : cases) {
    auto r = run_scenario(c.name, c.args);
    bool ok = r.status == c.expected;
    bad += !ok;
    std::cout << (ok ? "PASS " : "FAIL ") << c.name;
    for (const auto& x : c.args) std::cout << " " << x;
    std::cout << ": " << to_string(r.status) << "\n";
    if (!ok) std::cout << scenario_report(r);
  }
  for (const auto& s : scenario_sources()) {
    bool ok = true;
    try {
      parse_document(s.text);
    } catch (const Error&) {
      ok = false;
    }
    bad += !ok;
    std::cout << (ok ? "PASS " : "FAIL ") << "source " << s.name << " parses\n";
  }
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear differential system reduction"};
  app.require_subcommand(1);

  std::string parse_path = "-";
  auto* parse = app.add_subcommand("parse", "Parse a document and print it canonically");
  parse->add_option("file", parse_path, "Input file, - for stdin");

  std::string derive_path = "-";
  unsigned derive_k = 1;
  auto* derive = app.add_subcommand("derive", "Differentiate every item of a document");
  derive->add_option("file", derive_path, "Input file, - for stdin");
  derive->add_option("-k,--times", derive_k, "Number of derivatives")->check(CLI::NonNegativeNumber);

  TangentArgs ta;
  auto* tangent = app.add_subcommand("tangent", "Differential tangent system of f(x_j) = y at a point");
  tangent->add_option("file", ta.path, "Input file, - for stdin");
  tangent->add_option("--point", ta.points, "Comma-separated free indeterminates a1,a2,...")->required();
  tangent->add_option("--names", ta.names, "Comma-separated tangent variable names");
  tangent->add_option("--constant", ta.constant, "Free constant of f that y replaces");
  tangent->add_flag("--eliminate-y", ta.eliminate, "Equate the left-hand sides pairwise");

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "Reduce a linear system to a single equation");
  reduce->add_option("file", ra.path, "Input file, - for stdin");
  reduce->add_option("--certify", ra.certify, "Certificate mode")
      ->check(CLI::IsMember({"exact", "leading", "jet"}));
  reduce->add_option("--seed", ra.seed, "Seed for jet sampling");
  reduce->add_option("--trace-out", ra.trace_out, "Write the JSON trace here");
  reduce->add_option("--format", ra.format, "Standard output format")->check(CLI::IsMember({"text", "json"}));

  ScenarioArgs sa;
  auto* scenario = app.add_subcommand("scenario", "Run a bundled scenario");
  scenario->add_option("name", sa.name, "Scenario name")->required();
  scenario->add_option("args", sa.args, "Scenario arguments (generic: h m [d])");
  scenario->add_option("--certify", sa.certify, "Certificate mode")
      ->check(CLI::IsMember({"exact", "leading", "jet"}));
  scenario->add_option("--seed", sa.seed, "Seed for jet sampling");
  scenario->add_option("--json", sa.json_out, "Write the JSON result here");
  scenario->add_flag("--trace", sa.trace, "Print the text trace after the report");

  auto* selftest = app.add_subcommand("selftest", "Run the bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*parse) return cmd_parse(parse_path);
    if (*derive) return cmd_derive(derive_path, derive_k);
    if (*tangent) return cmd_tangent(ta);
    if (*reduce) return cmd_reduce(ra);
    if (*scenario) return cmd_scenario(sa);
    if (*selftest) return cmd_selftest();
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
