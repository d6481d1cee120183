// Acceptance suite: one PASS/FAIL line per criterion.
#include "ctlehc/emit.hpp"
#include "ctlehc/fixtures.hpp"
#include "ctlehc/frontend.hpp"
#include "ctlehc/interp.hpp"
#include "ctlehc/synthesis.hpp"
#include "ctlehc/trans.hpp"
#include "test_util.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ctlehc;
using ctlehc::testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failure messages for one criterion.
struct Report {
  std::vector<std::string> failures;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int failed = 0;

void criterion(int n, const std::string& title, const std::function<void(Report&)>& body) {
  Report r;
  auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = seconds_since(t0);
  const bool ok = r.failures.empty();
  failed += ok ? 0 : 1;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " (" << r.detail.str();
  std::cout.precision(2);
  std::cout << std::fixed << ", " << secs << "s)\n";
  for (std::size_t i = 0; i < r.failures.size() && i < 10; ++i) std::cout << "    " << r.failures[i] << "\n";
  std::cout.flush();
}

std::vector<std::string> names(const std::vector<Atom>& atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms) out.push_back(a.pred->name);
  return out;
}

bool mentions(const Expr& e, const Var& v) {
  auto fv = free_vars(e);
  return std::find(fv.begin(), fv.end(), v) != fv.end();
}

std::size_t count_nodes(const Formula& f, const std::function<bool(FKind)>& pick) {
  std::size_t n = pick(f->kind) ? 1 : 0;
  for (const auto& k : f->kids) n += count_nodes(k, pick);
  return n;
}

// 1. Six clauses of the first conjunct, compared against the appendix shapes.
void robots_structure(Report& r) {
  auto t0 = Clock::now();
  LoadedFixture l = load_fixture(fixture("robots"));
  Translation full = translate(l.problem);
  const TraceStep& first = full.trace.children.at(0);
  std::vector<Rule> chain{full.trace.rule};
  for (const TraceStep* s = &first;; s = &s->children[0]) {
    chain.push_back(s->rule);
    if (s->children.size() != 1) break;
  }
  r.require(chain == std::vector<Rule>{Rule::R1, Rule::R2, Rule::R4, Rule::R6}, "rule chain is not R1, R2, R4, R6");

  Translation sub = translate(first.problem);
  const ClauseSet& cs = sub.clauses;
  r.detail << cs.size() << " clauses";
  r.require(cs.size() == 6 && cs.clauses.size() == 5 && cs.dwf.size() == 1, "expected five clauses and one dwf");
  if (cs.clauses.size() != 5 || cs.dwf.size() != 1) return;

  const std::size_t nv = l.problem.program.vars.size();
  const TraceStep* r6 = &first;
  while (r6->rule != Rule::R6) r6 = &r6->children.at(0);
  const TraceStep* r4 = &first.children.at(0);
  const Var xg = *r4->fresh;
  const auto p = r6->preds.at(0)->name, t = r6->preds.at(1)->name, rr = r6->preds.at(2)->name;
  const std::string aux = full.trace.splits.at(0).first->name;
  r.require(r6->preds[0]->arity() == nv + 1, "p ranges over v and x_G");
  r.require(r6->preds[1]->arity() == 2 * (nv + 1) && r6->preds[2]->arity() == 2 * (nv + 1), "t and r are binary");

  const auto& c = cs.clauses;
  // aux1(v) & !x_G -> p(v, x_G)
  r.require(names(c[0].body_atoms) == std::vector<std::string>{aux} && names(c[0].head_atoms) == std::vector<std::string>{p} &&
                mentions(c[0].body_constraint, xg),
            "clause 1 shape");
  // next & p(v, x_G) -> p(v', x_G')
  r.require(names(c[1].body_atoms) == std::vector<std::string>{p} && names(c[1].head_atoms) == std::vector<std::string>{p} &&
                c[1].head_atoms[0].args == primed_all(c[1].body_atoms[0].args) && mentions(c[1].body_constraint, xg.primed()),
            "clause 2 shape");
  // p(v0) & t(v0, v1) & J(v1) -> r(v0, v1)
  bool c3 = names(c[2].body_atoms) == std::vector<std::string>{p, t} && names(c[2].head_atoms) == std::vector<std::string>{rr};
  if (c3) {
    const auto& pa = c[2].body_atoms[0].args;
    const auto& ta = c[2].body_atoms[1].args;
    const auto& ra = c[2].head_atoms[0].args;
    c3 = std::equal(pa.begin(), pa.end(), ta.begin()) && std::equal(pa.begin(), pa.end(), ra.begin()) &&
         std::equal(ta.begin() + static_cast<std::ptrdiff_t>(nv + 1), ta.end(), ra.begin() + static_cast<std::ptrdiff_t>(nv + 1)) &&
         !is_true(c[2].body_constraint);
  }
  r.require(c3, "clause 3 shape");
  r.require(cs.dwf[0].pred->name == rr, "dwf(r)");
  // next & (x_G = safe & x_G') -> t(v, v')
  r.require(c[3].body_atoms.empty() && names(c[3].head_atoms) == std::vector<std::string>{t} &&
                mentions(c[3].body_constraint, xg) && mentions(c[3].body_constraint, xg.primed()),
            "clause 5 shape");
  // t(v, v') & next(v', v'') -> t(v, v'')
  bool c6 = names(c[4].body_atoms) == std::vector<std::string>{t} && names(c[4].head_atoms) == std::vector<std::string>{t};
  if (c6) {
    const auto& ba = c[4].body_atoms[0].args;
    const auto& ha = c[4].head_atoms[0].args;
    c6 = std::equal(ba.begin(), ba.begin() + static_cast<std::ptrdiff_t>(nv + 1), ha.begin()) &&
         ha[nv + 1] == ba[nv + 1].primed() && mentions(c[4].body_constraint, xg.primed(2));
  }
  r.require(c6, "clause 6 shape");
  r.require(emit_clauses_text(cs) ==
                ctlehc::testing::read_file(ctlehc::testing::golden_dir() / "robots-conjunct1.clauses"),
            "differs from the golden clause file");
  const double secs = seconds_since(t0);
  r.require(secs < 1.0, "slower than one second");
}

// 2. Bound over the whole corpus and locked counts.
void bound(Report& r) {
  std::size_t checked = 0, worst_num = 0, worst_den = 1;
  for (const auto& f : fixtures()) {
    LoadedFixture l = load_fixture(f);
    std::size_t count, limit;
    if (f.partial()) {
      SynthEncoding enc = delta_synth(l.partial, l.problem.spec);
      count = enc.translation.clauses.size();
      limit = synth_clause_bound(enc, l.problem.spec);
      if (f.name == "bank") r.require(count == 90, "bank count changed: " + std::to_string(count));
    } else {
      count = translate(l.problem).clauses.size();
      limit = clause_count_bound(spec_measure(l.problem), l.problem.program.fairness.size());
      if (f.name == "robots") r.require(count == 46, "robots count changed: " + std::to_string(count));
    }
    r.require(count <= limit, f.name + ": " + std::to_string(count) + " > " + std::to_string(limit));
    if (count * worst_den > worst_num * limit) {
      worst_num = count;
      worst_den = limit;
    }
    ++checked;
  }
  r.detail << checked << " problems, C=" << kBoundFactor << ", C'=" << kBoundConstant << ", tightest " << worst_num << "/"
           << worst_den;
}

// 3. No random interpretation is accepted for a problem the oracle rejects.
void fuzz(Report& r) {
  constexpr int kPerFixture = 10000;
  Rng rng(20240601);
  std::size_t fixtures_used = 0, accepted = 0, total = 0;
  for (const Fixture* f : ctlehc::testing::small_finite_fixtures(6)) {
    LoadedFixture l = load_fixture(*f);
    auto quantifiers = count_nodes(l.problem.spec, is_quantifier);
    auto temporal = count_nodes(l.problem.spec, [](FKind k) { return is_temporal(k); });
    if (quantifiers > 2 || temporal > 2) continue;
    ++fixtures_used;
    Translation t = translate(l.problem);
    ClauseSetChecker checker(t.clauses, l.domains);
    const bool holds = model_check(l.problem.program, l.problem.spec, l.domains).holds;
    Interpretation near = compose_witness(t, l.domains);
    for (int i = 0; i < kPerFixture; ++i) {
      Interpretation I;
      switch (i % 3) {
        case 0:
          I = ctlehc::testing::random_interpretation(t.clauses, l.domains, rng, 0.1 + 0.8 * (rng() % 9) / 8.0);
          break;
        case 1:
          I = complete_derived(
              t.clauses, ctlehc::testing::random_interpretation(t.clauses, l.domains, rng, 0.1 + 0.8 * (rng() % 9) / 8.0),
              l.domains);
          break;
        default:
          I = near;
          ctlehc::testing::perturb(I, t.clauses, rng, 1 + rng() % 3);
          I = complete_derived(t.clauses, I, l.domains);
          break;
      }
      ++total;
      if (checker.check(I).ok) {
        ++accepted;
        r.require(holds, f->name + ": accepted interpretation for a false problem");
      }
    }
  }
  r.require(fixtures_used >= 20, "fewer than 20 fixtures");
  r.detail << fixtures_used << " fixtures, " << total << " interpretations, " << accepted << " accepted";
}

// 4. Composed witnesses are accepted for every holding finite fixture.
void completeness(Report& r) {
  std::size_t n = 0;
  for (const Fixture* f : fixtures_tagged("finite")) {
    if (f->partial()) continue;
    LoadedFixture l = load_fixture(*f);
    if (!model_check(l.problem.program, l.problem.spec, l.domains).holds) continue;
    Translation t = translate(l.problem);
    Verdict v = check_clause_set(t.clauses, compose_witness(t, l.domains), l.domains);
    r.require(v.ok, f->name + ": " + (v.violation ? v.violation->str() : ""));
    ++n;
  }
  r.detail << n << " holding fixtures";
}

// 5. Enumerator verdict equals the oracle verdict on micro instances.
void micro(Report& r) {
  std::size_t n = 0, unsat = 0;
  for (const Fixture* f : fixtures_tagged("micro")) {
    if (f->partial()) continue;
    LoadedFixture l = load_fixture(*f);
    Translation t = translate(l.problem);
    EnumResult e = enumerate_interpretations(t.clauses, l.domains);
    const bool holds = model_check(l.problem.program, l.problem.spec, l.domains).holds;
    r.require(e.status != EnumStatus::CapExceeded, f->name + ": " + e.cap_reason);
    r.require((e.status == EnumStatus::Sat) == holds, f->name + ": enumerator disagrees with the oracle");
    if (e.status == EnumStatus::Sat)
      r.require(check_clause_set(t.clauses, e.model, l.domains).ok, f->name + ": model rejected");
    unsat += e.status == EnumStatus::Unsat;
    ++n;
  }
  r.require(n >= 10, "fewer than 10 micro fixtures");
  r.require(unsat >= 2, "fewer than 2 unsat cases");
  r.detail << n << " fixtures, " << unsat << " unsat";
}

// 6. Well-foundedness coincides with dwf of the transitive closure.
void podelski_rybalchenko(Report& r) {
  Rng rng(42);
  PredPtr p = make_pred("r", {Var{"e", Sort::integer()}, Var{"e", Sort::integer(), 1}});
  DwfClause d{p, "dwf"};
  std::size_t wf = 0, violations = 0;
  for (int i = 0; i < 100000; ++i) {
    std::size_t n = 1 + rng() % 6;
    Relation rel = ctlehc::testing::random_binary(rng, n, 0.05 + 0.1 * static_cast<double>(rng() % 4));
    Interpretation I;
    I.set("r", transitive_closure(rel));
    const bool a = is_well_founded(rel);
    violations += a != check_dwf(d, I).ok;
    wf += a;
  }
  r.require(violations == 0, std::to_string(violations) + " violations");
  r.detail << "100000 relations, " << wf << " well-founded";
}

// 7. Temporal elimination preserves the state labelling.
void preservation(Report& r) {
  std::size_t comparisons = 0;
  for (const Fixture* f : fixtures_tagged("finite")) {
    if (f->partial()) continue;
    LoadedFixture l = load_fixture(*f);
    const Program& prog = l.problem.program;
    std::vector<Expr> cs = formula_atoms(l.problem.spec);
    if (cs.empty()) cs.push_back(ex::t());
    Expr c1 = cs[0], c2 = cs.size() > 1 ? cs[1] : ex::not_(cs[0]);
    Formula a1 = fm::atom(c1), a2 = fm::atom(c2);
    std::vector<Formula> paths{fm::X(a1), fm::G(a1), fm::U(a1, a2), fm::and_(fm::X(a2), fm::G(a1)),
                               fm::or_(fm::U(a2, a1), fm::X(a2))};
    Program any = prog;
    any.init = ex::t();
    FiniteSystem base = expand_finite(any, l.domains);
    ModelChecker mc(base);
    for (FKind q : {FKind::Af, FKind::Ef}) {
      for (const auto& path : paths) {
        Problem p{prog, to_nnf(fm::quant(q, path))};
        auto node = find_eligible_temporal(p.spec->kids[0]);
        if (!node) continue;
        ClauseSet scratch;
        FreshNamer namer(reserved_names(prog));
        ClauseBuilder b(scratch, namer);
        Extension e = eliminate_temporal(p, *node, b);
        Program ext = e.extended.program;
        ext.init = ex::t();
        FiniteSystem big = expand_finite(ext, l.domains);
        ModelChecker mc2(big);
        StateSet lhs = mc.label(p.spec);
        StateSet rhs = mc2.label(e.extended.spec);
        for (std::uint32_t s = 0; s < base.size(); ++s) {
          bool all = true, some = false;
          for (Value x : {Value(0), Value(1)}) {
            auto val = base.states[s];
            val.push_back(x);
            auto t = big.find(val);
            if (!t) continue;
            all = all && rhs[*t];
            some = some || rhs[*t];
          }
          const bool expected = q == FKind::Af ? all : some;
          r.require(lhs[s] == expected, f->name + ": " + to_string(p.spec) + " differs at state " + std::to_string(s));
        }
        ++comparisons;
      }
    }
  }
  r.detail << comparisons << " eliminations";
}

// 8. Enumerated interpretations give realizing Ψ and realizing Ψ give accepted
// interpretations.
void synthesis(Report& r) {
  std::size_t programs = 0, realizable_total = 0, unrealizable = 0;
  for (const Fixture* f : fixtures_tagged("synth")) {
    if (!f->has("micro")) continue;
    ++programs;
    LoadedFixture l = load_fixture(*f);
    SynthEncoding enc = delta_synth(l.partial, l.problem.spec);
    const ClauseSet& cs = enc.translation.clauses;
    std::size_t realizable = 0;
    const bool complete = for_each_resolving(l.partial, l.domains, 1 << 16, [&](const ResolvingFunction& psi) {
      if (!model_check(apply_resolving(l.partial, psi), l.problem.spec, l.domains).holds) return true;
      ++realizable;
      Interpretation I = compose_witness(enc.translation, l.domains, resolving_interpretation(l.partial, psi, l.domains));
      r.require(check_clause_set(cs, I, l.domains).ok, f->name + ": witness for a realizing Ψ rejected");
      return true;
    });
    r.require(complete, f->name + ": Ψ space over the cap");
    realizable_total += realizable;
    for (bool raw : {false, true}) {
      EnumOptions opt;
      opt.raw = raw;
      EnumResult e = enumerate_interpretations(cs, l.domains, opt);
      r.require(e.status != EnumStatus::CapExceeded, f->name + ": " + e.cap_reason);
      r.require((e.status == EnumStatus::Sat) == (realizable > 0), f->name + ": enumerator disagrees with Ψ search");
      if (e.status == EnumStatus::Sat) {
        ResolvingFunction psi = extract_resolving(e.model, l.partial, l.domains);
        r.require(model_check(apply_resolving(l.partial, psi), l.problem.spec, l.domains).holds,
                  f->name + ": extracted Ψ does not realize the spec");
      } else if (!raw && realizable == 0) {
        ++unrealizable;
      }
    }
  }
  r.require(programs >= 5, "fewer than 5 micro partial programs");
  r.require(unrealizable >= 1, "no unrealizable instance");
  r.detail << programs << " programs, " << realizable_total << " realizing Ψ, " << unrealizable << " unrealizable";
}

// 9. Bank encoding structure and the rescaled micro-bank.
void bank(Report& r) {
  LoadedFixture l = load_fixture(fixture("bank"));
  SynthEncoding enc = delta_synth(l.partial, l.problem.spec);
  r.require(enc.delta_a_count == 2, "expected 2 Δ_a clauses");
  for (std::size_t i = 0; i < 2 && i < enc.translation.clauses.clauses.size(); ++i) {
    const Clause& c = enc.translation.clauses.clauses[i];
    r.require(c.body_atoms.empty() && c.head_atoms.size() == 1 && c.head_atoms[0].pred->name.rfind("u_a_", 0) == 0,
              "Δ_a clauses come first");
  }
  std::size_t next = 0, yes = 0, no = 0, assign = 0;
  for (const auto& d : disjuncts(build_next_u(l.partial, enc.holes))) {
    bool counted = false;
    for (const auto& c : conjuncts(d)) {
      if (c->op == ExprOp::Pred && c->pred->name.rfind("u_c_", 0) == 0) ++yes, counted = true;
      else if (c->op == ExprOp::Not && c->kids[0]->op == ExprOp::Pred) ++no, counted = true;
      else if (c->op == ExprOp::Pred && c->pred->name.rfind("u_a_", 0) == 0) ++assign, counted = true;
    }
    if (!counted) ++next;
  }
  r.require(next == 7 && yes == 1 && no == 1 && assign == 2, "next_U disjunct groups");
  LoadedFixture m = load_fixture(fixture("micro-bank"));
  const bool holds = model_check(apply_fills(m.partial, m.fills), m.problem.spec, m.domains).holds;
  r.require(holds, "micro-bank with the rescaled fills violates the rescaled spec");
  r.detail << "Δ_a=" << enc.delta_a_count << ", groups " << next << "/" << yes << "/" << no << "/" << assign
           << ", micro-bank " << (holds ? "holds" : "fails");
}

}  // namespace

int main() {
  criterion(1, "robots first conjunct reproduces the six-clause listing", robots_structure);
  criterion(2, "clause counts within the bound", bound);
  criterion(3, "soundness fuzz", fuzz);
  criterion(4, "composed witnesses accepted", completeness);
  criterion(5, "enumerator matches the oracle on micro instances", micro);
  criterion(6, "well-founded iff closure passes dwf", podelski_rybalchenko);
  criterion(7, "temporal elimination preserves labels", preservation);
  criterion(8, "synthesis round trip", synthesis);
  criterion(9, "bank encoding and micro-bank", bank);
  return failed == 0 ? 0 : 1;
}
