#include "ctlehc/clause.hpp"

#include <algorithm>

namespace ctlehc {

std::string Atom::str() const { return to_string(expr()); }

void Clause::validate() const {
  auto in = [](const std::vector<Var>& vs, const Var& v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); };
  for (const auto& w : exist_vars)
    if (in(all_vars, w)) throw Error("existential variable " + w.display() + " is also universal");
  auto check_atom = [](const Atom& a) {
    if (a.args.size() != a.pred->arity()) throw Error("atom " + a.pred->name + " has the wrong arity");
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      const auto& want = a.pred->arg_sort(i);
      const auto& got = a.args[i].sort;
      if (!(want == got) && !(want.numeric() && got.numeric()))
        throw Error("atom " + a.str() + " has an ill-sorted argument");
    }
  };
  std::vector<Var> body_vars;
  collect_free_vars(body_constraint, body_vars);
  for (const auto& a : body_atoms) {
    check_atom(a);
    for (const auto& v : a.args) body_vars.push_back(v);
  }
  for (const auto& v : body_vars)
    if (!in(all_vars, v)) throw Error("body variable " + v.display() + " is not quantified");
  std::vector<Var> head_vars;
  collect_free_vars(head_constraint, head_vars);
  for (const auto& a : head_atoms) {
    check_atom(a);
    for (const auto& v : a.args) head_vars.push_back(v);
  }
  for (const auto& v : head_vars)
    if (!in(all_vars, v) && !in(exist_vars, v)) throw Error("head variable " + v.display() + " is not quantified");
  if (has_atoms(body_constraint) || has_atoms(head_constraint))
    throw Error("clause constraints must be free of predicate atoms");
}

PredPtr ClauseSet::find_pred(std::string_view name) const {
  for (const auto& p : preds)
    if (p->name == name) return p;
  return nullptr;
}

bool ClauseSet::is_dwf(std::string_view name) const {
  return std::any_of(dwf.begin(), dwf.end(), [&](const DwfClause& d) { return d.pred->name == name; });
}

const Derivation* ClauseSet::derivation_of(std::string_view name) const {
  for (const auto& d : derived)
    if (d.pred->name == name) return &d;
  return nullptr;
}

void ClauseSet::declare(PredPtr p) {
  if (find_pred(p->name)) throw Error("predicate " + p->name + " declared twice");
  preds.push_back(std::move(p));
}

void ClauseSet::validate() const {
  auto declared = [&](const Atom& a) {
    auto p = find_pred(a.pred->name);
    if (!p) throw Error("undeclared predicate " + a.pred->name);
    if (p->arity() != a.pred->arity()) throw Error("predicate " + a.pred->name + " used with the wrong arity");
  };
  for (const auto& c : clauses) {
    c.validate();
    for (const auto& a : c.body_atoms) declared(a);
    for (const auto& a : c.head_atoms) declared(a);
  }
  for (const auto& d : dwf) {
    auto p = find_pred(d.pred->name);
    if (!p) throw Error("dwf of undeclared predicate " + d.pred->name);
    if (p->arity() % 2 != 0) throw Error("dwf predicate " + p->name + " must have even arity");
    auto h = p->arity() / 2;
    for (std::size_t i = 0; i < h; ++i)
      if (!(p->arg_sort(i) == p->arg_sort(i + h)) || p->arg_domain(i) != p->arg_domain(i + h))
        throw Error("dwf predicate " + p->name + " must relate a tuple space to itself");
  }
}

}  // namespace ctlehc
