#include "ctlehc/frontend.hpp"
#include "ctlehc/synthesis.hpp"

#include <limits>
#include <sstream>

namespace ctlehc {

namespace {

std::vector<Var> concat(std::vector<Var> a, const std::vector<Var>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Expr at_loc(const Var& pc, const std::string& l) { return ex::eq(ex::var(pc), ex::label(pc.sort, l)); }
Expr goes_to(const Var& pc, const std::string& l) { return ex::eq(ex::var(pc.primed()), ex::label(pc.sort, l)); }

Expr point(const std::vector<Var>& vs, std::span<const Value> vals) {
  std::vector<Expr> cs;
  for (std::size_t i = 0; i < vs.size(); ++i) cs.push_back(ex::eq(ex::var(vs[i]), ex::num(vals[i], vs[i].sort)));
  return ex::and_(std::move(cs));
}

std::string tuple_str(const std::vector<Var>& vs, std::span<const Value> vals) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? ", " : "") << vs[i].display() << "=" << value_str(vals[i], vs[i].sort);
  os << ")";
  return os.str();
}

std::size_t half_size(const Relation& r) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < r.arity() / 2; ++i) n *= r.axes()[i].size();
  return n;
}

}  // namespace

std::vector<PredPtr> make_hole_predicates(const PartialProgram& ph) {
  ph.validate();
  auto vr = ph.data_vars();
  std::vector<PredPtr> out;
  for (const auto& h : ph.holes) {
    if (h.kind == Hole::Kind::Cond)
      out.push_back(make_pred("u_c_" + h.loc, vr));
    else
      out.push_back(make_pred("u_a_" + h.loc, concat(vr, primed_all(vr))));
  }
  return out;
}

PredPtr hole_predicate(const std::vector<PredPtr>& u, const Hole& h) {
  const std::string name = (h.kind == Hole::Kind::Cond ? "u_c_" : "u_a_") + h.loc;
  for (const auto& p : u)
    if (p->name == name) return p;
  throw Error("no predicate for the hole at " + h.loc);
}

void add_delta_a(const PartialProgram& ph, const std::vector<PredPtr>& u, ClauseBuilder& b) {
  auto vr1 = primed_all(ph.data_vars());
  for (const auto& h : ph.holes)
    if (h.kind == Hole::Kind::Assign) b.add("Da", ex::t(), vr1, ex::pred(hole_predicate(u, h)));
}

ClauseSet delta_a(const PartialProgram& ph) {
  ClauseSet out;
  FreshNamer namer(reserved_names(ph.program));
  ClauseBuilder b(out, namer);
  auto u = make_hole_predicates(ph);
  for (const auto& p : u) b.declare_existing(p);
  add_delta_a(ph, u, b);
  return out;
}

Expr build_next_u(const PartialProgram& ph, const std::vector<PredPtr>& u, ClauseBuilder* b) {
  const Var pc = ph.pc();
  const auto vr = ph.data_vars();
  const auto vr1 = primed_all(vr);
  const Expr same = ex::vars_equal(vr1, vr);
  std::vector<Expr> cond_true, cond_false, assign;
  for (const auto& h : ph.holes) {
    auto p = hole_predicate(u, h);
    if (h.kind == Hole::Kind::Cond) {
      Expr yes = ex::pred(p, vr);
      Expr no = b ? ex::pred(b->complement(p), vr) : ex::not_(yes);
      cond_true.push_back(ex::and_({at_loc(pc, h.loc), goes_to(pc, h.target), yes, same}));
      cond_false.push_back(ex::and_({at_loc(pc, h.loc), goes_to(pc, h.false_target), no, same}));
    } else {
      assign.push_back(ex::and_({at_loc(pc, h.loc), goes_to(pc, h.target), ex::pred(p, concat(vr, vr1))}));
    }
  }
  std::vector<Expr> all{ph.program.next};
  for (auto* group : {&cond_true, &cond_false, &assign}) all.insert(all.end(), group->begin(), group->end());
  return ex::or_(std::move(all));
}

Program program_u(const PartialProgram& ph, const std::vector<PredPtr>& u, ClauseBuilder* b) {
  Program out = ph.program;
  out.next = build_next_u(ph, u, b);
  return out;
}

SynthEncoding delta_synth(const PartialProgram& ph, const Formula& phi) {
  ph.validate();
  SynthEncoding enc;
  enc.holes = make_hole_predicates(ph);
  auto& t = enc.translation;
  FreshNamer namer(reserved_names(ph.program));
  ClauseBuilder b(t.clauses, namer);
  for (const auto& p : enc.holes) b.declare_existing(p);
  for (const auto& a : atoms_of(ex::and_(ex::and_(ph.program.init, ph.program.next), ex::and_(ph.program.fairness))))
    b.declare_existing(a->pred);
  add_delta_a(ph, enc.holes, b);
  enc.delta_a_count = t.clauses.clauses.size();
  enc.program_u = program_u(ph, enc.holes, ph.holes.empty() ? nullptr : &b);
  Problem p{enc.program_u, to_nnf(phi)};
  t.trace = translate_into(p, b);
  t.clauses.validate();
  return enc;
}

std::size_t synth_clause_bound(const SynthEncoding& enc, const Formula& phi) {
  Problem p{enc.program_u, phi};
  return clause_count_bound(spec_measure(p), enc.program_u.fairness.size()) + enc.delta_a_count;
}

void validate_resolving(const PartialProgram& ph, const ResolvingFunction& psi, bool deterministic) {
  const auto vr = ph.data_vars();
  for (const auto& h : ph.holes) {
    if (h.kind == Hole::Kind::Cond) {
      auto it = psi.cond.find(h.loc);
      if (it == psi.cond.end()) throw Error("resolving function has no condition for the hole at " + h.loc);
      if (it->second.arity() != vr.size()) throw Error("condition for the hole at " + h.loc + " has the wrong arity");
      continue;
    }
    auto it = psi.assign.find(h.loc);
    if (it == psi.assign.end()) throw Error("resolving function has no assignment for the hole at " + h.loc);
    const Relation& r = it->second;
    if (r.arity() != 2 * vr.size()) throw Error("assignment for the hole at " + h.loc + " has the wrong arity");
    const std::size_t n = half_size(r);
    const std::size_t m = r.space() / std::max<std::size_t>(n, 1);
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t succ = 0;
      for (std::size_t b = 0; b < m; ++b) succ += r.test(a * m + b);
      if (succ == 0 || (deterministic && succ > 1)) {
        auto tup = r.tuple_at(a * m);
        tup.resize(vr.size());
        throw Error("assignment hole at " + h.loc + (succ == 0 ? " has no successor" : " is not deterministic") +
                    " for " + tuple_str(vr, tup));
      }
    }
  }
}

Program apply_resolving(const PartialProgram& ph, const ResolvingFunction& psi, bool deterministic) {
  ph.validate();
  validate_resolving(ph, psi, deterministic);
  const Var pc = ph.pc();
  const auto vr = ph.data_vars();
  const auto vr1 = primed_all(vr);
  const auto both = concat(vr, vr1);
  const Expr same = ex::vars_equal(vr1, vr);
  std::vector<Expr> cond_true, cond_false, assign;
  for (const auto& h : ph.holes) {
    if (h.kind == Hole::Kind::Cond) {
      const Relation& r = psi.cond.at(h.loc);
      for (std::size_t k = 0; k < r.space(); ++k) {
        auto tup = r.tuple_at(k);
        auto& group = r.test(k) ? cond_true : cond_false;
        group.push_back(ex::and_({at_loc(pc, h.loc), goes_to(pc, r.test(k) ? h.target : h.false_target),
                                  point(vr, tup), same}));
      }
    } else {
      const Relation& r = psi.assign.at(h.loc);
      for (std::size_t k = 0; k < r.space(); ++k)
        if (r.test(k)) {
          auto tup = r.tuple_at(k);
          assign.push_back(ex::and_({at_loc(pc, h.loc), goes_to(pc, h.target), point(both, tup)}));
        }
    }
  }
  Program out = ph.program;
  std::vector<Expr> all{ph.program.next};
  for (auto* group : {&cond_true, &cond_false, &assign}) all.insert(all.end(), group->begin(), group->end());
  out.next = ex::or_(std::move(all));
  return out;
}

Program apply_fills(const PartialProgram& ph, const std::map<std::string, Expr>& fills) {
  ph.validate();
  const Var pc = ph.pc();
  const auto vr = ph.data_vars();
  const auto vr1 = primed_all(vr);
  const Expr same = ex::vars_equal(vr1, vr);
  std::vector<Expr> cond_true, cond_false, assign;
  for (const auto& h : ph.holes) {
    auto it = fills.find(h.loc);
    if (it == fills.end()) throw Error("no fill for the hole at " + h.loc);
    const Expr& f = it->second;
    if (h.kind == Hole::Kind::Cond) {
      cond_true.push_back(ex::and_({at_loc(pc, h.loc), goes_to(pc, h.target), f, same}));
      cond_false.push_back(ex::and_({at_loc(pc, h.loc), goes_to(pc, h.false_target), ex::not_(f), same}));
    } else {
      assign.push_back(ex::and_({at_loc(pc, h.loc), goes_to(pc, h.target), f}));
    }
  }
  Program out = ph.program;
  std::vector<Expr> all{ph.program.next};
  for (auto* group : {&cond_true, &cond_false, &assign}) all.insert(all.end(), group->begin(), group->end());
  out.next = ex::or_(std::move(all));
  return out;
}

ResolvingFunction extract_resolving(const Interpretation& interp, const PartialProgram& ph, const Domains& d) {
  auto u = make_hole_predicates(ph);
  ResolvingFunction psi;
  for (const auto& h : ph.holes) {
    auto p = hole_predicate(u, h);
    if (!interp.has(p->name)) throw Error("interpretation has no relation for hole predicate " + p->name);
    const Relation& src = interp.at(p->name);
    Relation r(axes_for(*p, d));
    for (std::size_t k = 0; k < r.space(); ++k) r.set(k, src.contains(r.tuple_at(k)));
    (h.kind == Hole::Kind::Cond ? psi.cond : psi.assign).emplace(h.loc, std::move(r));
  }
  try {
    validate_resolving(ph, psi);
  } catch (const Error& e) {
    throw Error(std::string("interpretation violates the assignment totality clauses: ") + e.what());
  }
  return psi;
}

Interpretation resolving_interpretation(const PartialProgram& ph, const ResolvingFunction& psi, const Domains& d) {
  auto u = make_hole_predicates(ph);
  Interpretation out;
  for (const auto& h : ph.holes) {
    auto p = hole_predicate(u, h);
    const Relation& src = h.kind == Hole::Kind::Cond ? psi.cond.at(h.loc) : psi.assign.at(h.loc);
    Relation r(axes_for(*p, d));
    for (std::size_t k = 0; k < r.space(); ++k) r.set(k, src.contains(r.tuple_at(k)));
    out.set(p->name, std::move(r));
  }
  return out;
}

ResolvingFunction tabulate_resolving(const PartialProgram& ph, const std::map<std::string, Expr>& fills,
                                     const Domains& d) {
  auto u = make_hole_predicates(ph);
  ResolvingFunction psi;
  for (const auto& h : ph.holes) {
    auto it = fills.find(h.loc);
    if (it == fills.end()) throw Error("no fill for the hole at " + h.loc);
    auto p = hole_predicate(u, h);
    SlotLayout layout(p->params);
    CompiledExpr ce(it->second, layout.resolver());
    Relation r(axes_for(*p, d));
    for (std::size_t k = 0; k < r.space(); ++k) r.set(k, ce.holds(r.tuple_at(k)));
    (h.kind == Hole::Kind::Cond ? psi.cond : psi.assign).emplace(h.loc, std::move(r));
  }
  return psi;
}

bool for_each_resolving(const PartialProgram& ph, const Domains& d, std::size_t cap,
                        const std::function<bool(const ResolvingFunction&)>& visit) {
  auto u = make_hole_predicates(ph);
  // One digit per condition tuple (2 choices) and per assignment source
  // valuation (a nonempty successor set).
  struct Digit {
    std::size_t hole;
    std::size_t row;
    std::size_t radix;
  };
  std::vector<Relation> rels;
  std::vector<Digit> digits;
  std::size_t total = 1;
  auto grow = [&](std::size_t radix) {
    if (radix != 0 && total > std::numeric_limits<std::size_t>::max() / radix) total = std::numeric_limits<std::size_t>::max();
    else total *= radix;
  };
  for (std::size_t i = 0; i < ph.holes.size(); ++i) {
    auto p = hole_predicate(u, ph.holes[i]);
    rels.emplace_back(axes_for(*p, d));
    const auto& r = rels.back();
    if (ph.holes[i].kind == Hole::Kind::Cond) {
      for (std::size_t k = 0; k < r.space(); ++k) {
        digits.push_back({i, k, 2});
        grow(2);
      }
    } else {
      std::size_t n = half_size(r);
      std::size_t m = r.space() / std::max<std::size_t>(n, 1);
      if (m >= 63) return false;
      for (std::size_t a = 0; a < n; ++a) {
        digits.push_back({i, a, (std::size_t{1} << m) - 1});
        grow((std::size_t{1} << m) - 1);
      }
    }
  }
  if (total > cap) return false;
  std::vector<std::size_t> value(digits.size(), 0);
  for (std::size_t count = 0; count < total; ++count) {
    for (auto& r : rels) r.clear();
    for (std::size_t k = 0; k < digits.size(); ++k) {
      const auto& dg = digits[k];
      auto& r = rels[dg.hole];
      if (ph.holes[dg.hole].kind == Hole::Kind::Cond) {
        r.set(dg.row, value[k] != 0);
      } else {
        std::size_t m = r.space() / half_size(r);
        std::size_t mask = value[k] + 1;
        for (std::size_t b = 0; b < m; ++b)
          if (mask >> b & 1) r.set(dg.row * m + b);
      }
    }
    ResolvingFunction psi;
    for (std::size_t i = 0; i < ph.holes.size(); ++i)
      (ph.holes[i].kind == Hole::Kind::Cond ? psi.cond : psi.assign).emplace(ph.holes[i].loc, rels[i]);
    if (!visit(psi)) return true;
    for (std::size_t k = digits.size(); k-- > 0;) {
      if (++value[k] < digits[k].radix) break;
      value[k] = 0;
    }
  }
  return true;
}

}  // namespace ctlehc
