#include "ctlehc/emit.hpp"
#include "ctlehc/frontend.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace ctlehc {

using json = nlohmann::ordered_json;

namespace {

json value_json(const Value& v, const Sort& s) {
  switch (s.kind()) {
    case SortKind::Bool:
      return v != 0;
    case SortKind::Loc:
      return value_str(v, s);
    default:
      if (v.denominator() == 1) return v.numerator();
      return value_str(v);
  }
}

Value value_from_json(const json& j, const Sort& s) {
  if (j.is_boolean()) return Value(j.get<bool>() ? 1 : 0);
  if (j.is_number_integer()) return Value(j.get<std::int64_t>());
  if (j.is_string()) {
    auto text = j.get<std::string>();
    if (s.kind() == SortKind::Loc) {
      auto i = s.label_index(text);
      if (!i) throw Error("unknown location label '" + text + "'");
      return Value(static_cast<std::int64_t>(*i));
    }
    return parse_value(text);
  }
  throw Error("unsupported JSON value " + j.dump());
}

json var_json(const Var& v) { return json{{"name", v.display()}, {"sort", v.sort.str()}}; }

Sort sort_from_string(const std::string& text) {
  detail::Parser p(detail::lex(text), Scope{});
  return p.sort();
}

json tuples_json(const Relation& r, const std::vector<Var>& params) {
  json out = json::array();
  for (std::size_t k = 0; k < r.space(); ++k) {
    if (!r.test(k)) continue;
    auto tup = r.tuple_at(k);
    json row = json::array();
    for (std::size_t i = 0; i < tup.size(); ++i) row.push_back(value_json(tup[i], params[i].sort));
    out.push_back(std::move(row));
  }
  return out;
}

Relation tuples_from_json(const json& rows, const PredSym& p, const Domains& d) {
  Relation r(axes_for(p, d));
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != p.arity())
      throw Error("tuple for " + p.name + " must have " + std::to_string(p.arity()) + " values");
    std::vector<Value> tup;
    for (std::size_t i = 0; i < row.size(); ++i) tup.push_back(value_from_json(row[i], p.params[i].sort));
    r.insert(tup);
  }
  return r;
}

json conj_json(const Expr& constraint, const std::vector<Atom>& atoms) {
  json a = json::array();
  for (const auto& x : atoms) a.push_back(x.str());
  return json{{"constraint", to_string(constraint)}, {"atoms", std::move(a)}};
}

json state_ids(const StateSet& s) {
  json out = json::array();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i]) out.push_back(i);
  return out;
}

StateSet ids_to_set(const json& j, std::size_t n) {
  StateSet out(n, false);
  for (const auto& i : j) {
    auto k = i.get<std::size_t>();
    if (k >= n) throw Error("state id out of range");
    out[k] = true;
  }
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string emit_clauses_json(const ClauseSet& cs) {
  json preds = json::array();
  for (const auto& p : cs.preds) {
    json params = json::array();
    for (const auto& v : p->params) params.push_back(var_json(v));
    preds.push_back(json{{"name", p->name}, {"arity", p->arity()}, {"params", std::move(params)}, {"dwf", cs.is_dwf(p->name)}});
  }
  json clauses = json::array();
  for (const auto& c : cs.clauses) {
    json all = json::array(), ex = json::array();
    for (const auto& v : c.all_vars) all.push_back(var_json(v));
    for (const auto& v : c.exist_vars) ex.push_back(var_json(v));
    clauses.push_back(json{{"tag", c.tag},
                           {"forall", std::move(all)},
                           {"body", conj_json(c.body_constraint, c.body_atoms)},
                           {"exists", std::move(ex)},
                           {"head", conj_json(c.head_constraint, c.head_atoms)}});
  }
  json dwf = json::array();
  for (const auto& d : cs.dwf) dwf.push_back(d.pred->name);
  json derived = json::array();
  for (const auto& d : cs.derived) {
    json e{{"kind", d.kind == Derivation::Kind::Selector ? "selector" : "complement"}, {"pred", d.pred->name}};
    if (d.base) e["base"] = d.base->name;
    derived.push_back(std::move(e));
  }
  json out{{"preds", std::move(preds)}, {"clauses", std::move(clauses)}, {"dwf", std::move(dwf)},
           {"derived", std::move(derived)}, {"count", cs.size()}};
  return out.dump(2) + "\n";
}

std::string interpretation_to_json(const Interpretation& interp, const std::vector<PredPtr>& preds, const Domains* d) {
  json rels = json::object();
  for (const auto& p : preds)
    if (interp.has(p->name)) rels[p->name] = tuples_json(interp.at(p->name), p->params);
  json out = json::object();
  if (d) out["domain"] = d->str();
  out["relations"] = std::move(rels);
  return out.dump(2) + "\n";
}

Interpretation interpretation_from_json(std::string_view text, const std::vector<PredPtr>& preds, Domains& d) {
  json j = parse_json(text);
  if (j.contains("domain")) {
    Domains file = Domains::parse(j["domain"].get<std::string>());
    file.merge(d);
    d = file;
  }
  Interpretation out;
  const json& rels = j.contains("relations") ? j["relations"] : j;
  for (const auto& [name, rows] : rels.items()) {
    auto it = std::find_if(preds.begin(), preds.end(), [&](const PredPtr& p) { return p->name == name; });
    if (it == preds.end()) throw Error("interpretation names unknown predicate " + name);
    out.set(name, tuples_from_json(rows, **it, d));
  }
  return out;
}

std::string finite_system_to_json(const FiniteSystem& fs) {
  json vars = json::array(), domains = json::array(), states = json::array(), succ = json::array(),
       fair = json::array();
  for (std::size_t i = 0; i < fs.vars.size(); ++i) {
    vars.push_back(var_json(fs.vars[i]));
    json dom = json::array();
    for (const auto& v : fs.domains[i]) dom.push_back(value_json(v, fs.vars[i].sort));
    domains.push_back(std::move(dom));
  }
  for (const auto& s : fs.states) {
    json row = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) row.push_back(value_json(s[i], fs.vars[i].sort));
    states.push_back(std::move(row));
  }
  for (const auto& row : fs.succ) succ.push_back(row);
  for (const auto& j : fs.fairness) fair.push_back(state_ids(j));
  json out{{"vars", std::move(vars)},       {"domains", std::move(domains)}, {"states", std::move(states)},
           {"initial", state_ids(fs.initial)}, {"succ", std::move(succ)},     {"fairness", std::move(fair)}};
  return out.dump(2) + "\n";
}

FiniteSystem finite_system_from_json(std::string_view text) {
  json j = parse_json(text);
  FiniteSystem fs;
  try {
    for (const auto& v : j.at("vars")) {
      Var var;
      var.name = v.at("name").get<std::string>();
      var.sort = sort_from_string(v.at("sort").get<std::string>());
      fs.vars.push_back(var);
    }
    const std::size_t n = fs.vars.size();
    for (const auto& row : j.at("states")) {
      if (row.size() != n) throw Error("state arity mismatch");
      std::vector<Value> s;
      for (std::size_t i = 0; i < n; ++i) s.push_back(value_from_json(row[i], fs.vars[i].sort));
      fs.states.push_back(std::move(s));
    }
    fs.domains.resize(n);
    if (j.contains("domains")) {
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& v : j["domains"].at(i)) fs.domains[i].push_back(value_from_json(v, fs.vars[i].sort));
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        std::set<Value> seen;
        for (const auto& s : fs.states) seen.insert(s[i]);
        fs.domains[i].assign(seen.begin(), seen.end());
      }
    }
    fs.initial = ids_to_set(j.at("initial"), fs.states.size());
    for (const auto& row : j.at("succ")) fs.succ.push_back(row.get<std::vector<std::uint32_t>>());
    if (j.contains("fairness"))
      for (const auto& f : j["fairness"]) fs.fairness.push_back(ids_to_set(f, fs.states.size()));
  } catch (const json::exception& e) {
    throw Error(std::string("malformed finite system: ") + e.what());
  }
  fs.reindex();
  fs.validate();
  return fs;
}

std::string resolving_to_json(const ResolvingFunction& psi, const PartialProgram& ph) {
  auto u = make_hole_predicates(ph);
  json cond = json::object(), assign = json::object();
  for (const auto& h : ph.holes) {
    auto p = hole_predicate(u, h);
    if (h.kind == Hole::Kind::Cond && psi.cond.count(h.loc)) cond[h.loc] = tuples_json(psi.cond.at(h.loc), p->params);
    if (h.kind == Hole::Kind::Assign && psi.assign.count(h.loc))
      assign[h.loc] = tuples_json(psi.assign.at(h.loc), p->params);
  }
  json out{{"cond", std::move(cond)}, {"assign", std::move(assign)}};
  return out.dump(2) + "\n";
}

ResolvingFunction resolving_from_json(std::string_view text, const PartialProgram& ph, const Domains& d) {
  json j = parse_json(text);
  auto u = make_hole_predicates(ph);
  ResolvingFunction psi;
  std::map<std::string, Expr> fills;
  for (const auto& h : ph.holes) {
    const char* group = h.kind == Hole::Kind::Cond ? "cond" : "assign";
    if (!j.contains(group) || !j[group].contains(h.loc)) throw Error("no entry for the hole at " + h.loc);
    const json& e = j[group][h.loc];
    auto p = hole_predicate(u, h);
    if (e.is_string()) {
      Scope scope;
      scope.vars = p->params;
      scope.allow_primes = true;
      fills[h.loc] = parse_assertion(e.get<std::string>(), scope);
      continue;
    }
    (h.kind == Hole::Kind::Cond ? psi.cond : psi.assign).emplace(h.loc, tuples_from_json(e, *p, d));
  }
  if (!fills.empty()) {
    PartialProgram only = ph;
    only.holes.clear();
    for (const auto& h : ph.holes)
      if (fills.count(h.loc)) only.holes.push_back(h);
    auto tab = tabulate_resolving(only, fills, d);
    psi.cond.merge(tab.cond);
    psi.assign.merge(tab.assign);
  }
  return psi;
}

std::string program_to_json(const Program& p) {
  json vars = json::array(), fair = json::array();
  for (const auto& v : p.vars) vars.push_back(var_json(v));
  for (const auto& f : p.fairness) fair.push_back(to_string(f));
  json out{{"vars", std::move(vars)}, {"init", to_string(p.init)}, {"next", to_string(p.next)}, {"fair", std::move(fair)}};
  return out.dump(2) + "\n";
}

}  // namespace ctlehc
