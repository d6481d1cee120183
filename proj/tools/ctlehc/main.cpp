#include "ctlehc/emit.hpp"
#include "ctlehc/fixtures.hpp"
#include "ctlehc/frontend.hpp"
#include "ctlehc/interp.hpp"
#include "ctlehc/oracle.hpp"
#include "ctlehc/synthesis.hpp"
#include "ctlehc/trans.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ctlehc;
using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kFalse = 1, kInput = 2, kCap = 3 };

constexpr std::size_t kResolvingCap = 1 << 16;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A spec argument is either a file holding the formula or the formula itself.
std::string spec_text(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::string out;
  std::istringstream in(read_file(arg));
  for (std::string line; std::getline(in, line);) {
    auto cut = line.find("//");
    if (cut != std::string::npos) line.resize(cut);
    out += line + " ";
  }
  return out;
}

void write_out(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  os << data;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool finite_domains(const Program& p, const Domains& d) {
  try {
    for (const auto& v : p.vars) d.values(v);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Domains domains_with(const Domains& base, const std::string& extra) {
  Domains d = base;
  if (!extra.empty()) d.merge(Domains::parse(extra));
  return d;
}

std::string emit(const ClauseSet& cs, const std::string& format) {
  return format == "json" ? emit_clauses_json(cs) : emit_clauses_text(cs);
}

void print_report(const json& j, bool as_json, std::ostream& os) {
  if (as_json) {
    os << j.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

struct Options {
  bool as_json = false;
  std::string format = "text";
  std::string out;
  std::string domain;
};

int cmd_translate(const Options& o, const std::string& prog, const std::string& spec) {
  ProgramFile pf = parse_program_file(read_file(prog));
  if (!pf.holes.empty()) throw Error("the program has holes; use `synth encode`");
  Problem p{pf.program, parse_formula(spec_text(spec), pf.program)};
  Translation t = translate(p);
  const std::size_t n = spec_measure(p), k = p.program.fairness.size();
  write_out(o.out, emit(t.clauses, o.format));
  json report{{"clauses", t.clauses.size()}, {"bound", clause_count_bound(n, k)}, {"n", n}, {"k", k}};
  print_report(report, o.as_json, o.out.empty() ? std::cerr : std::cout);
  return kOk;
}

int cmd_model_check(const Options& o, const std::string& input, const std::string& spec) {
  ModelCheckResult r;
  std::size_t states = 0;
  if (ends_with(input, ".json")) {
    FiniteSystem fs = finite_system_from_json(read_file(input));
    Program shell;
    shell.vars = fs.vars;
    r = model_check(fs, parse_formula(spec_text(spec), shell));
    states = fs.size();
  } else {
    ProgramFile pf = parse_program_file(read_file(input));
    Domains d = domains_with(pf.domains, o.domain);
    if (!finite_domains(pf.program, d)) throw Error("every int/rat variable needs a finite domain (--domain)");
    FiniteSystem fs = expand_finite(pf.program, d);
    r = model_check(fs, parse_formula(spec_text(spec), pf.program));
    states = fs.size();
  }
  json report{{"holds", r.holds}, {"states", states}, {"failing_initial", r.failing_initial}};
  print_report(report, o.as_json, std::cout);
  return r.holds ? kOk : kFalse;
}

int cmd_check_interp(const Options& o, const std::string& clauses, const std::string& interp_path) {
  ClauseSet cs = parse_clauses_text(read_file(clauses));
  Domains d = domains_with({}, o.domain);
  Interpretation interp = interpretation_from_json(read_file(interp_path), cs.preds, d);
  interp = complete_derived(cs, interp, d);
  Verdict v = check_clause_set(cs, interp, d);
  json report{{"accepted", v.ok}};
  if (v.violation) report["violation"] = v.violation->str();
  print_report(report, o.as_json, std::cout);
  return v.ok ? kOk : kFalse;
}

int cmd_synth_encode(const Options& o, const std::string& partial, const std::string& spec) {
  PartialProgram ph = parse_partial_program(read_file(partial));
  Formula phi = parse_formula(spec_text(spec), ph.program);
  SynthEncoding enc = delta_synth(ph, phi);
  write_out(o.out, emit(enc.translation.clauses, o.format));
  json report{{"clauses", enc.translation.clauses.size()},
              {"delta_a", enc.delta_a_count},
              {"bound", synth_clause_bound(enc, phi)}};
  print_report(report, o.as_json, o.out.empty() ? std::cerr : std::cout);
  return kOk;
}

int cmd_synth_apply(const Options& o, const std::string& partial, const std::string& psi_path,
                    const std::string& check_spec) {
  ProgramFile pf = parse_program_file(read_file(partial));
  PartialProgram ph{pf.program, pf.holes};
  Domains d = domains_with(pf.domains, o.domain);
  const std::string text = read_file(psi_path);
  Program applied;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
  bool symbolic = true;
  for (const char* group : {"cond", "assign"})
    if (j.contains(group))
      for (const auto& [loc, e] : j[group].items()) symbolic = symbolic && e.is_string();
  if (symbolic) {
    Scope scope;
    for (const auto& v : ph.data_vars()) {
      scope.vars.push_back(v);
      scope.vars.push_back(v.primed());
    }
    scope.allow_primes = true;
    std::map<std::string, Expr> fills;
    for (const char* group : {"cond", "assign"})
      if (j.contains(group))
        for (const auto& [loc, e] : j[group].items()) fills[loc] = parse_assertion(e.get<std::string>(), scope);
    applied = apply_fills(ph, fills);
  } else {
    applied = apply_resolving(ph, resolving_from_json(text, ph, d));
  }
  write_out(o.out, program_to_string(applied, &d));
  if (check_spec.empty()) return kOk;
  if (!finite_domains(applied, d)) throw Error("checking needs a finite domain for every variable");
  auto r = model_check(applied, parse_formula(spec_text(check_spec), applied), d);
  json report{{"holds", r.holds}};
  print_report(report, o.as_json, o.out.empty() ? std::cerr : std::cout);
  return r.holds ? kOk : kFalse;
}

int cmd_enumerate(const Options& o, const std::string& clauses, std::uint64_t cap, bool raw, bool count) {
  ClauseSet cs = parse_clauses_text(read_file(clauses));
  Domains d = domains_with({}, o.domain);
  EnumOptions opt;
  if (cap) opt.max_decisions = cap;
  opt.raw = raw;
  opt.count_all = count;
  EnumResult r = enumerate_interpretations(cs, d, opt);
  json report{{"status", status_name(r.status)}, {"decisions", r.decisions}};
  if (count) report["models"] = r.models;
  if (r.status == EnumStatus::CapExceeded) report["reason"] = r.cap_reason;
  if (r.status == EnumStatus::Sat) write_out(o.out, interpretation_to_json(r.model, cs.preds, &d));
  print_report(report, o.as_json, (o.out.empty() && r.status == EnumStatus::Sat) ? std::cerr : std::cout);
  switch (r.status) {
    case EnumStatus::Sat:
      return kOk;
    case EnumStatus::Unsat:
      return kFalse;
    default:
      return kCap;
  }
}

json run_fixture(const Fixture& f) {
  LoadedFixture l = load_fixture(f);
  json out{{"name", f.name}};
  bool ok = true;
  std::optional<bool> holds;
  const bool finite = finite_domains(l.problem.program, l.domains);
  if (f.partial()) {
    SynthEncoding enc = delta_synth(l.partial, l.problem.spec);
    out["clauses"] = enc.translation.clauses.size();
    out["delta_a"] = enc.delta_a_count;
    out["bound"] = synth_clause_bound(enc, l.problem.spec);
    if (!l.fills.empty() && finite) {
      Program applied = apply_fills(l.partial, l.fills);
      holds = model_check(applied, l.problem.spec, l.domains).holds;
    } else if (finite) {
      // Realizability by exhaustive search over resolving functions.
      bool found = false;
      bool complete = for_each_resolving(l.partial, l.domains, kResolvingCap, [&](const ResolvingFunction& psi) {
        found = model_check(apply_resolving(l.partial, psi), l.problem.spec, l.domains).holds;
        return !found;
      });
      if (complete || found) holds = found;
    }
  } else {
    Translation t = translate(l.problem);
    out["clauses"] = t.clauses.size();
    out["bound"] = clause_count_bound(spec_measure(l.problem), l.problem.program.fairness.size());
    if (finite) {
      holds = model_check(l.problem.program, l.problem.spec, l.domains).holds;
      if (*holds) {
        Verdict v = check_clause_set(t.clauses, compose_witness(t, l.domains), l.domains);
        out["witness_accepted"] = v.ok;
        ok = ok && v.ok;
      }
    }
  }
  ok = ok && out["clauses"].get<std::size_t>() <= out["bound"].get<std::size_t>();
  if (holds) out["holds"] = *holds;
  if (f.expect) {
    out["expect"] = *f.expect;
    ok = ok && holds && *holds == *f.expect;
  }
  out["ok"] = ok;
  return out;
}

int cmd_fixtures_list(const Options& o, const std::string& tag) {
  json rows = json::array();
  for (const auto& f : fixtures()) {
    if (!tag.empty() && !f.has(tag)) continue;
    json tags = json::array();
    for (const auto& t : f.tags) tags.push_back(t);
    rows.push_back(json{{"name", f.name}, {"file", f.file}, {"tags", tags}, {"spec", f.spec}});
  }
  if (o.as_json) {
    std::cout << rows.dump(2) << "\n";
    return kOk;
  }
  for (const auto& r : rows) {
    std::string tags;
    for (const auto& t : r["tags"]) tags += (tags.empty() ? "" : ",") + t.get<std::string>();
    std::cout << r["name"].get<std::string>() << "  [" << tags << "]  " << r["spec"].get<std::string>() << "\n";
  }
  return kOk;
}

int cmd_fixtures_run(const Options& o, const std::string& name) {
  std::vector<const Fixture*> which;
  if (name == "all") {
    for (const auto& f : fixtures()) which.push_back(&f);
  } else {
    which.push_back(&fixture(name));
  }
  bool all_ok = true;
  json rows = json::array();
  for (const auto* f : which) {
    json r = run_fixture(*f);
    all_ok = all_ok && r["ok"].get<bool>();
    if (o.as_json) {
      rows.push_back(std::move(r));
      continue;
    }
    std::cout << (r["ok"].get<bool>() ? "ok   " : "FAIL ") << f->name << "  clauses=" << r["clauses"].dump()
              << " bound=" << r["bound"].dump();
    if (r.contains("holds")) std::cout << " holds=" << r["holds"].dump();
    if (r.contains("witness_accepted")) std::cout << " witness=" << r["witness_accepted"].dump();
    std::cout << "\n";
  }
  if (o.as_json) std::cout << (which.size() == 1 ? rows[0] : rows).dump(2) << "\n";
  return all_ok ? kOk : kFalse;
}

int cmd_fixtures_export(const std::string& dir) {
  for (const auto& p : export_fixtures(dir)) std::cout << p.string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CTL* verification and synthesis to existential Horn clauses"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c, bool output) {
    c->add_flag("--json", o.as_json, "Print the report as JSON");
    if (output) {
      c->add_option("-o,--output", o.out, "Output file (default stdout)");
      c->add_option("--format", o.format, "Clause format")->check(CLI::IsMember({"text", "json"}));
    }
  };
  std::string a1, a2, tag, check_spec;
  std::uint64_t cap = 0;
  bool raw = false, count = false;

  auto* tr = app.add_subcommand("translate", "Translate a verification problem to clauses");
  tr->add_option("program", a1, "Program file")->required();
  tr->add_option("spec", a2, "CTL* formula or a file holding it")->required();
  common(tr, true);

  auto* mc = app.add_subcommand("model-check", "Check a finite program or system against a formula");
  mc->add_option("input", a1, "Program file or finite-system JSON")->required();
  mc->add_option("spec", a2, "CTL* formula or a file holding it")->required();
  mc->add_option("--domain", o.domain, "Finite domains, e.g. x=0..3,int=-1..1");
  common(mc, false);

  auto* ci = app.add_subcommand("check-interp", "Check an interpretation against a clause file");
  ci->add_option("clauses", a1, "Clause text file")->required();
  ci->add_option("interp", a2, "Interpretation JSON")->required();
  ci->add_option("--domain", o.domain, "Finite domains");
  common(ci, false);

  auto* sy = app.add_subcommand("synth", "Synthesis encodings");
  sy->require_subcommand(1);
  auto* se = sy->add_subcommand("encode", "Encode a synthesis problem");
  se->add_option("partial", a1, "Partial program file")->required();
  se->add_option("spec", a2, "CTL* formula or a file holding it")->required();
  common(se, true);
  auto* sa = sy->add_subcommand("apply", "Fill the holes of a partial program");
  sa->add_option("partial", a1, "Partial program file")->required();
  sa->add_option("psi", a2, "Resolving function JSON")->required();
  sa->add_option("--domain", o.domain, "Finite domains");
  sa->add_option("--check", check_spec, "Model-check the result against this formula");
  common(sa, true);

  auto* en = app.add_subcommand("enumerate", "Search for a satisfying interpretation over finite domains");
  en->add_option("clauses", a1, "Clause text file")->required();
  en->add_option("--domain", o.domain, "Finite domains");
  en->add_option("--cap", cap, "Decision cap");
  en->add_flag("--raw", raw, "Search derived predicates like any other");
  en->add_flag("--count", count, "Count every model");
  common(en, true);

  auto* fx = app.add_subcommand("fixtures", "Built-in fixture corpus");
  fx->require_subcommand(1);
  auto* fl = fx->add_subcommand("list", "List fixtures");
  fl->add_option("--tag", tag, "Only fixtures with this tag");
  common(fl, false);
  auto* fr = fx->add_subcommand("run", "Run a fixture (or all)");
  fr->add_option("name", a1, "Fixture name or `all`")->required();
  common(fr, false);
  auto* fe = fx->add_subcommand("export", "Write the fixture files");
  fe->add_option("dir", a1, "Target directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*tr) return cmd_translate(o, a1, a2);
    if (*mc) return cmd_model_check(o, a1, a2);
    if (*ci) return cmd_check_interp(o, a1, a2);
    if (*se) return cmd_synth_encode(o, a1, a2);
    if (*sa) return cmd_synth_apply(o, a1, a2, check_spec);
    if (*en) return cmd_enumerate(o, a1, cap, raw, count);
    if (*fl) return cmd_fixtures_list(o, tag);
    if (*fr) return cmd_fixtures_run(o, a1);
    if (*fe) return cmd_fixtures_export(a1);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
