#include "ctlehc/frontend.hpp"
#include "ctlehc/trans.hpp"

namespace ctlehc {

std::set<std::string> reserved_names(const Program& p) {
  std::set<std::string> out;
  for (const auto& v : p.vars) out.insert(v.name);
  auto preds = [&](const Expr& e) {
    for (const auto& a : atoms_of(e)) out.insert(a->pred->name);
  };
  preds(p.init);
  preds(p.next);
  for (const auto& j : p.fairness) preds(j);
  return out;
}

TraceStep translate_into(const Problem& p, ClauseBuilder& b) {
  TraceStep step;
  step.problem = p;
  if (!is_state_formula(p.spec)) throw Error("the specification must be a state formula: " + to_string(p.spec));
  if (as_assertion(p.spec)) {
    step.rule = Rule::R8;
    rule8_assertion(p, b);
    return step;
  }
  if (!is_basic(p.spec)) {
    step.rule = Rule::R1;
    std::vector<Problem> subs;
    Problem residual = p;
    while (auto s = rule1_split(residual, b)) {
      step.splits.emplace_back(s->aux, s->extracted);
      subs.push_back(std::move(s->sub));
      residual = std::move(s->residual);
    }
    for (const auto& sub : subs) step.children.push_back(translate_into(sub, b));
    step.children.push_back(translate_into(residual, b));
    return step;
  }
  FKind q = p.spec->kind;
  if (q == FKind::A || q == FKind::E) {
    step.rule = Rule::R2;
    step.children.push_back(translate_into(rule2_defair(p), b));
    return step;
  }
  if (as_assertion(p.spec->kids[0])) {
    if (q == FKind::Af) {
      step.rule = Rule::R6;
      auto r = rule6_af_assertion(p, b);
      step.preds = {r.p, r.t, r.r};
    } else {
      step.rule = Rule::R7;
      auto r = rule7_ef_assertion(p, b);
      step.preds = r.q;
      step.preds.insert(step.preds.end(), r.r.begin(), r.r.end());
    }
    return step;
  }
  auto node = find_eligible_temporal(p.spec->kids[0]);
  if (!node) throw Error("no eligible temporal subformula in " + to_string(p.spec));
  auto e = eliminate_temporal(p, *node, b);
  step.rule = e.rule;
  step.fresh = e.fresh;
  step.eliminated = e.eliminated;
  step.aux = e.aux;
  step.children.push_back(translate_into(e.extended, b));
  return step;
}

Translation translate(const Problem& p) {
  p.program.validate();
  Translation t;
  FreshNamer namer(reserved_names(p.program));
  ClauseBuilder b(t.clauses, namer);
  for (const auto& a : atoms_of(ex::and_(ex::and_(p.program.init, p.program.next), ex::and_(p.program.fairness))))
    b.declare_existing(a->pred);
  Problem q = p;
  q.spec = to_nnf(p.spec);
  t.trace = translate_into(q, b);
  t.clauses.validate();
  return t;
}

std::size_t spec_measure(const Problem& p) {
  std::size_t n = formula_size(to_nnf(p.spec));
  n += atoms_of(p.program.init).size() + atoms_of(p.program.next).size();
  for (const auto& j : p.program.fairness) n += atoms_of(j).size();
  return n;
}

std::size_t clause_count_bound(std::size_t n, std::size_t k) { return kBoundFactor * n * (n + k) + kBoundConstant; }

}  // namespace ctlehc
