#include "ctlehc/trans.hpp"

#include <functional>

namespace ctlehc {

std::string rule_name(Rule r) {
  static const char* names[] = {"R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8"};
  return names[static_cast<int>(r)];
}

namespace {

// Preorder search below the root for the first basic subformula.
Formula first_proper_basic(const Formula& f, bool root) {
  if (!root && is_basic(f)) return f;
  if (f->kind == FKind::Atom) return nullptr;
  for (const auto& k : f->kids)
    if (auto g = first_proper_basic(k, false)) return g;
  return nullptr;
}

Formula eligible(const Formula& f) {
  for (const auto& k : f->kids)
    if (auto g = eligible(k)) return g;
  if (f->kind == FKind::X || f->kind == FKind::G || f->kind == FKind::U) {
    for (const auto& k : f->kids)
      if (!as_assertion(k)) return nullptr;
    return f;
  }
  return nullptr;
}

Expr assertion_of(const Formula& f) {
  auto c = as_assertion(f);
  if (!c) throw Error("expected an assertion: " + to_string(f));
  return *c;
}

Extension extend(Rule rule, const Problem& p, const Formula& node, ClauseBuilder& b, const std::string& family,
                 const std::function<void(const Var&, Program&)>& update) {
  if (!is_fair_quantifier(p.spec->kind)) throw Error("temporal elimination expects a fair path quantifier");
  Extension e;
  e.rule = rule;
  e.eliminated = node;
  e.fresh = Var{b.namer().next(family), Sort::boolean()};
  const Program& prog = p.program;
  Program out = prog;
  out.vars.push_back(e.fresh);
  update(e.fresh, out);
  if (p.spec->kind == FKind::Ef) {
    e.aux = b.declare("aux", out.vars);
    b.add(rule_name(rule), prog.init, {e.fresh}, ex::pred(e.aux));
    out.init = ex::pred(e.aux);
  }
  e.extended.program = std::move(out);
  e.extended.spec = substitute(p.spec, node, fm::atom(ex::var(e.fresh)));
  return e;
}

}  // namespace

std::optional<Rule1Split> rule1_split(const Problem& p, ClauseBuilder& b) {
  auto sub = first_proper_basic(p.spec, true);
  if (!sub) return std::nullopt;
  Rule1Split s;
  s.aux = b.declare("aux", p.program.vars);
  s.extracted = sub;
  s.sub.program = p.program;
  s.sub.program.init = ex::pred(s.aux);
  s.sub.spec = sub;
  s.residual.program = p.program;
  s.residual.spec = substitute(p.spec, sub, fm::atom(ex::pred(s.aux)));
  return s;
}

Problem rule2_defair(const Problem& p) {
  FKind q = p.spec->kind;
  if (q != FKind::A && q != FKind::E) throw Error("rule 2 expects an A or E formula");
  Problem out;
  out.program = p.program;
  out.program.fairness.clear();
  out.spec = fm::quant(q == FKind::A ? FKind::Af : FKind::Ef, p.spec->kids[0]);
  return out;
}

std::optional<Formula> find_eligible_temporal(const Formula& path) {
  if (auto f = eligible(path)) return f;
  return std::nullopt;
}

Extension rule3_next(const Problem& p, const Formula& node, ClauseBuilder& b) {
  if (node->kind != FKind::X) throw Error("rule 3 expects an X node");
  Expr c = assertion_of(node->kids[0]);
  return extend(Rule::R3, p, node, b, "x_X", [&](const Var& x, Program& out) {
    out.next = ex::and_(out.next, ex::eq(ex::var(x), shift_primes(c, 1)));
  });
}

Extension rule4_globally(const Problem& p, const Formula& node, ClauseBuilder& b) {
  if (node->kind != FKind::G) throw Error("rule 4 expects a G node");
  Expr c = assertion_of(node->kids[0]);
  return extend(Rule::R4, p, node, b, "x_G", [&](const Var& x, Program& out) {
    out.next = ex::and_(out.next, ex::eq(ex::var(x), ex::and_(c, ex::var(x.primed()))));
    out.fairness.push_back(ex::or_(ex::var(x), ex::not_(c)));
  });
}

Extension rule5_until(const Problem& p, const Formula& node, ClauseBuilder& b) {
  if (node->kind != FKind::U) throw Error("rule 5 expects a U node");
  Expr c1 = assertion_of(node->kids[0]);
  Expr c2 = assertion_of(node->kids[1]);
  return extend(Rule::R5, p, node, b, "x_U", [&](const Var& x, Program& out) {
    out.next = ex::and_(out.next, ex::eq(ex::var(x), ex::or_(c2, ex::and_(c1, ex::var(x.primed())))));
    out.fairness.push_back(ex::or_(ex::not_(ex::var(x)), c2));
  });
}

Extension eliminate_temporal(const Problem& p, const Formula& node, ClauseBuilder& b) {
  switch (node->kind) {
    case FKind::X:
      return rule3_next(p, node, b);
    case FKind::G:
      return rule4_globally(p, node, b);
    case FKind::U:
      return rule5_until(p, node, b);
    default:
      throw Error("no elimination rule for " + to_string(node));
  }
}

Rule6Preds rule6_af_assertion(const Problem& prob, ClauseBuilder& b) {
  if (prob.spec->kind != FKind::Af) throw Error("rule 6 expects an A_f formula");
  Expr c = assertion_of(prob.spec->kids[0]);
  const Program& pr = prob.program;
  const auto& v = pr.vars;
  auto v1 = primed_all(v, 1);
  auto v2 = primed_all(v, 2);
  auto cat = [](std::vector<Var> a, const std::vector<Var>& c2) {
    a.insert(a.end(), c2.begin(), c2.end());
    return a;
  };
  Rule6Preds out;
  out.p = b.declare("p", v);
  out.t = b.declare("t", cat(v, v1));
  out.r = b.declare("r", cat(v, v1));
  b.add("R6", ex::and_(pr.init, ex::not_(c)), {}, ex::pred(out.p, v));
  b.add("R6", ex::and_(pr.next, ex::pred(out.p, v)), {}, ex::pred(out.p, v1));
  const std::size_t k = pr.fairness.size();
  if (k == 0) {
    b.add("R6", ex::and_(ex::pred(out.p, v), ex::pred(out.t, cat(v, v1))), {}, ex::pred(out.r, cat(v, v1)));
  } else {
    std::vector<Expr> body{ex::pred(out.p, copied_all(v, 0))};
    for (std::size_t i = 1; i <= k; ++i) {
      auto prev = copied_all(v, static_cast<int>(i - 1));
      auto cur = copied_all(v, static_cast<int>(i));
      body.push_back(ex::pred(out.t, cat(prev, cur)));
      body.push_back(to_copy(pr.fairness[i - 1], static_cast<int>(i)));
    }
    b.add("R6", ex::and_(std::move(body)), {},
          ex::pred(out.r, cat(copied_all(v, 0), copied_all(v, static_cast<int>(k)))));
  }
  b.add_dwf("R6", out.r);
  b.add("R6", pr.next, {}, ex::pred(out.t, cat(v, v1)));
  b.add("R6", ex::and_(ex::pred(out.t, cat(v, v1)), shift_primes(pr.next, 1)), {}, ex::pred(out.t, cat(v, v2)));
  return out;
}

Rule7Preds rule7_ef_assertion(const Problem& prob, ClauseBuilder& b) {
  if (prob.spec->kind != FKind::Ef) throw Error("rule 7 expects an E_f formula");
  Expr c = assertion_of(prob.spec->kids[0]);
  const Program& pr = prob.program;
  const auto& v = pr.vars;
  auto v1 = primed_all(v, 1);
  auto v2 = primed_all(v, 2);
  auto cat = [](std::vector<Var> a, const std::vector<Var>& c2) {
    a.insert(a.end(), c2.begin(), c2.end());
    return a;
  };
  Rule7Preds out;
  const std::size_t k = pr.fairness.size();
  if (k == 0) {
    auto q = b.declare("q", v);
    out.q.push_back(q);
    b.add("R7", pr.init, {}, ex::and_(c, ex::pred(q, v)));
    b.add("R7", ex::pred(q, v), v1, ex::and_(pr.next, ex::pred(q, v1)));
    return out;
  }
  for (std::size_t i = 0; i < k; ++i) out.q.push_back(b.declare("q", v));
  for (std::size_t i = 0; i < k; ++i) out.r.push_back(b.declare("r", cat(v, v1)));
  b.add("R7", pr.init, {}, ex::and_(c, ex::pred(out.q[0], v)));
  for (std::size_t i = 0; i < k; ++i) {
    const auto& qi = out.q[i];
    const auto& qn = out.q[(i + 1) % k];
    const auto& ri = out.r[i];
    Expr progress = ex::and_(pr.fairness[i], ex::pred(qn, v1));
    Expr wait = ex::and_(ex::pred(ri, cat(v, v1)), ex::pred(qi, v1));
    b.add("R7", ex::pred(qi, v), v1, ex::and_(pr.next, ex::or_(progress, wait)));
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto& ri = out.r[i];
    b.add_dwf("R7", ri);
    b.add("R7", ex::and_(ex::pred(ri, cat(v, v1)), ex::pred(ri, cat(v1, v2))), {}, ex::pred(ri, cat(v, v2)));
  }
  return out;
}

void rule8_assertion(const Problem& p, ClauseBuilder& b) {
  b.add("R8", p.program.init, {}, assertion_of(p.spec));
}

}  // namespace ctlehc
