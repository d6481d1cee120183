#include "ctlehc/trans.hpp"

#include <algorithm>

namespace ctlehc {

std::string FreshNamer::next(const std::string& family) {
  while (true) {
    std::string name = family + std::to_string(++counters_[family]);
    if (reserved_.count(name)) continue;
    reserved_.insert(name);
    ++issued_;
    return name;
  }
}

PredPtr ClauseBuilder::declare(const std::string& family, std::vector<Var> params) {
  auto p = make_pred(namer_.next(family), std::move(params));
  out_.declare(p);
  return p;
}

void ClauseBuilder::declare_existing(const PredPtr& p) {
  namer_.reserve(p->name);
  if (!out_.find_pred(p->name)) out_.declare(p);
}

std::string ClauseBuilder::tag(const std::string& rule) const { return rule + "#" + std::to_string(namer_.issued()); }

void ClauseBuilder::add_dwf(const std::string& rule, const PredPtr& p) { out_.dwf.push_back({p, tag(rule)}); }

PredPtr ClauseBuilder::complement(const PredPtr& p) {
  if (auto it = complement_of_.find(p->name); it != complement_of_.end()) return it->second;
  auto q = declare("neg", p->params);
  complement_of_[p->name] = q;
  complement_of_[q->name] = p;
  Derivation d;
  d.kind = Derivation::Kind::Complement;
  d.pred = q;
  d.base = p;
  out_.derived.push_back(d);
  Conj body;
  body.atoms = {Atom{p, p->params}, Atom{q, q->params}};
  Conj head;
  head.constraints = {ex::f()};
  emit(tag("neg"), body, {}, head);
  add("neg", ex::t(), {}, ex::or_(ex::pred(p), ex::pred(q)));
  return q;
}

Expr ClauseBuilder::atom_nnf(const Expr& e, bool positive) {
  if (!has_atoms(e)) return positive ? e : ex::not_(e);
  const auto& k = e->kids;
  switch (e->op) {
    case ExprOp::Pred:
      return positive ? e : ex::pred(complement(e->pred), e->args);
    case ExprOp::Not:
      return atom_nnf(k[0], !positive);
    case ExprOp::And:
    case ExprOp::Or: {
      std::vector<Expr> ks;
      for (const auto& x : k) ks.push_back(atom_nnf(x, positive));
      bool conj = (e->op == ExprOp::And) == positive;
      return conj ? ex::and_(std::move(ks)) : ex::or_(std::move(ks));
    }
    case ExprOp::Implies:
      if (positive) return ex::or_(atom_nnf(k[0], false), atom_nnf(k[1], true));
      return ex::and_(atom_nnf(k[0], true), atom_nnf(k[1], false));
    case ExprOp::Iff:
    case ExprOp::Eq:
    case ExprOp::Ne: {
      bool same = (e->op != ExprOp::Ne) == positive;
      if (same)
        return ex::or_(ex::and_(atom_nnf(k[0], true), atom_nnf(k[1], true)),
                       ex::and_(atom_nnf(k[0], false), atom_nnf(k[1], false)));
      return ex::or_(ex::and_(atom_nnf(k[0], true), atom_nnf(k[1], false)),
                     ex::and_(atom_nnf(k[0], false), atom_nnf(k[1], true)));
    }
    default:
      throw Error("predicate atom in a non-boolean position: " + to_string(e));
  }
}

std::vector<ClauseBuilder::Conj> ClauseBuilder::dnf(const Expr& e) {
  if (!has_atoms(e)) return {Conj{{e}, {}}};
  switch (e->op) {
    case ExprOp::Pred:
      return {Conj{{}, {Atom{e->pred, e->args}}}};
    case ExprOp::Or: {
      std::vector<Conj> out;
      for (const auto& k : e->kids) {
        auto d = dnf(k);
        out.insert(out.end(), d.begin(), d.end());
      }
      return out;
    }
    case ExprOp::And: {
      std::vector<Conj> acc{Conj{}};
      for (const auto& k : e->kids) {
        auto d = dnf(k);
        std::vector<Conj> next;
        for (const auto& a : acc)
          for (const auto& b : d) {
            Conj c = a;
            c.constraints.insert(c.constraints.end(), b.constraints.begin(), b.constraints.end());
            c.atoms.insert(c.atoms.end(), b.atoms.begin(), b.atoms.end());
            next.push_back(std::move(c));
          }
        acc = std::move(next);
      }
      return acc;
    }
    default:
      throw Error("expected an atom-level negation normal form: " + to_string(e));
  }
}

namespace {

void add_unique(std::vector<Var>& out, const Var& v) {
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

std::vector<Var> conj_vars(const std::vector<Expr>& constraints, const std::vector<Atom>& atoms) {
  std::vector<Var> out;
  for (const auto& c : constraints) collect_free_vars(c, out);
  for (const auto& a : atoms)
    for (const auto& v : a.args) add_unique(out, v);
  return out;
}

}  // namespace

void ClauseBuilder::emit(const std::string& tag, const Conj& body, const std::vector<Var>& exist, const Conj& head) {
  Clause c;
  c.tag = tag;
  c.body_constraint = ex::and_(body.constraints);
  c.body_atoms = body.atoms;
  c.head_constraint = ex::and_(head.constraints);
  c.head_atoms = head.atoms;
  c.exist_vars = exist;
  auto in_exist = [&](const Var& v) { return std::find(exist.begin(), exist.end(), v) != exist.end(); };
  for (const auto& v : conj_vars(body.constraints, body.atoms)) add_unique(c.all_vars, v);
  for (const auto& v : conj_vars(head.constraints, head.atoms))
    if (!in_exist(v)) add_unique(c.all_vars, v);
  c.validate();
  out_.clauses.push_back(std::move(c));
}

Atom ClauseBuilder::selector(const std::string& rule, const std::vector<Var>& shared, const std::vector<Var>& exist,
                             const std::vector<Conj>& branches) {
  std::vector<Var> params = shared;
  for (const auto& w : exist) add_unique(params, w);
  auto name = namer_.next("sel");
  Var bit{name + "_b", Sort::boolean()};
  params.push_back(bit);
  auto sel = make_pred(name, params);
  out_.declare(sel);
  Atom sel_atom{sel, params};
  Derivation d;
  d.kind = Derivation::Kind::Selector;
  d.pred = sel;
  d.params = params;
  d.branch[0] = HeadSpec{{}, ex::and_(branches[0].constraints), branches[0].atoms};
  std::size_t slot = out_.derived.size();
  out_.derived.push_back(d);

  const std::string t = tag(rule + "/or");
  emit(t, Conj{{ex::not_(ex::var(bit))}, {sel_atom}}, {}, branches[0]);
  std::vector<Conj> rest(branches.begin() + 1, branches.end());
  HeadSpec second;
  if (rest.size() == 1) {
    emit(t, Conj{{ex::var(bit)}, {sel_atom}}, {}, rest[0]);
    second = HeadSpec{{}, ex::and_(rest[0].constraints), rest[0].atoms};
  } else {
    std::vector<Var> inner_shared;
    for (const auto& r : rest)
      for (const auto& v : conj_vars(r.constraints, r.atoms)) add_unique(inner_shared, v);
    std::vector<Var> ordered;
    for (const auto& p : params)
      if (std::find(inner_shared.begin(), inner_shared.end(), p) != inner_shared.end()) ordered.push_back(p);
    Atom inner = selector(rule, ordered, {}, rest);
    Var inner_bit = inner.args.back();
    emit(t, Conj{{ex::var(bit)}, {sel_atom}}, {inner_bit}, Conj{{}, {inner}});
    second = HeadSpec{{inner_bit}, ex::t(), {inner}};
  }
  out_.derived[slot].branch[1] = second;
  return sel_atom;
}

void ClauseBuilder::add(const std::string& rule, const Expr& body, const std::vector<Var>& exist, const Expr& head) {
  auto b = atom_nnf(body, true);
  auto h = atom_nnf(head, true);
  auto bd = dnf(b);
  auto hd = dnf(h);
  if (hd.size() == 1) {
    const std::string t = tag(rule);
    for (const auto& c : bd) emit(t, c, exist, hd[0]);
    return;
  }
  std::vector<Var> shared;
  for (const auto& c : hd)
    for (const auto& v : conj_vars(c.constraints, c.atoms))
      if (std::find(exist.begin(), exist.end(), v) == exist.end()) add_unique(shared, v);
  Atom sel = selector(rule, shared, exist, hd);
  std::vector<Var> ex2 = exist;
  ex2.push_back(sel.args.back());
  const std::string t = tag(rule);
  for (const auto& c : bd) emit(t, c, ex2, Conj{{}, {sel}});
}

}  // namespace ctlehc
