#include "ctlehc/frontend.hpp"
#include "ctlehc/interp.hpp"
#include "ctlehc/trans.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace ctlehc;
using ctlehc::testing::Rng;

namespace {

using Matrix = std::vector<std::vector<bool>>;

Matrix to_matrix(const Relation& r, std::size_t n) {
  Matrix m(n, std::vector<bool>(n, false));
  for (std::size_t k = 0; k < r.space(); ++k)
    if (r.test(k)) m[k / n][k % n] = true;
  return m;
}

// Union of r, r^2, ..., r^n.
Matrix power_closure(const Matrix& r) {
  const std::size_t n = r.size();
  Matrix acc = r, pw = r;
  for (std::size_t step = 1; step < n; ++step) {
    Matrix next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (pw[i][j])
          for (std::size_t k = 0; k < n; ++k)
            if (r[j][k]) next[i][k] = true;
    pw = next;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) acc[i][k] = acc[i][k] || pw[i][k];
  }
  return acc;
}

// Acyclic by repeatedly removing elements without successors.
bool acyclic(const Matrix& r) {
  const std::size_t n = r.size();
  std::vector<bool> gone(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (gone[i]) continue;
      bool sink = true;
      for (std::size_t j = 0; j < n; ++j) sink = sink && (gone[j] || !r[i][j]);
      if (sink) gone[i] = changed = true;
    }
  }
  return std::all_of(gone.begin(), gone.end(), [](bool g) { return g; });
}

Interpretation with(const std::string& name, Relation r) {
  Interpretation i;
  i.set(name, std::move(r));
  return i;
}

const char* kChain = R"(
vars { x: int; }
init { x = 0 }
next { (x < 2 & x' = x + 1) | (x = 2 & x' = 2) }
fair { x = 2; }
)";

const char* kSink = R"(
vars { x: int; }
init { x = 0 }
next { (x = 0 & (x' = 1 | x' = 2)) | (x = 1 & x' = 0) | (x = 2 & x' = 2) }
fair { x != 2; }
)";

}  // namespace

TEST(Closure, SmallExamples) {
  Relation r({{Value(0), Value(1), Value(2)}, {Value(0), Value(1), Value(2)}});
  r.insert(std::vector<Value>{Value(0), Value(1)});
  r.insert(std::vector<Value>{Value(1), Value(2)});
  Relation c = transitive_closure(r);
  EXPECT_EQ(c.count(), 3u);
  EXPECT_TRUE(c.contains(std::vector<Value>{Value(0), Value(2)}));
  Relation empty({{Value(0)}, {Value(0)}});
  EXPECT_EQ(transitive_closure(empty).count(), 0u);
}

TEST(Closure, MatchesMatrixPowers) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    std::size_t n = 1 + rng() % 6;
    Relation r = ctlehc::testing::random_binary(rng, n, 0.25);
    EXPECT_EQ(to_matrix(transitive_closure(r), n), power_closure(to_matrix(r, n)));
  }
}

TEST(Closure, PairsOfTuples) {
  Relation r({{Value(0), Value(1)}, {Value(0), Value(1)}, {Value(0), Value(1)}, {Value(0), Value(1)}});
  r.insert(std::vector<Value>{Value(0), Value(0), Value(0), Value(1)});
  r.insert(std::vector<Value>{Value(0), Value(1), Value(1), Value(1)});
  Relation c = transitive_closure(r);
  EXPECT_TRUE(c.contains(std::vector<Value>{Value(0), Value(0), Value(1), Value(1)}));
  EXPECT_TRUE(is_well_founded(r));
  r.insert(std::vector<Value>{Value(1), Value(1), Value(0), Value(0)});
  EXPECT_FALSE(is_well_founded(r));
}

// A finite relation is well-founded iff its transitive closure passes the
// dwf check.
TEST(Dwf, PodelskiRybalchenkoProperty) {
  Rng rng(99);
  PredPtr p = make_pred("r", {Var{"e", Sort::integer()}, Var{"e", Sort::integer(), 1}});
  for (int i = 0; i < 5000; ++i) {
    std::size_t n = 1 + rng() % 6;
    Relation r = ctlehc::testing::random_binary(rng, n, 0.05 + 0.3 * static_cast<double>(rng() % 4) / 3.0);
    bool wf = is_well_founded(r);
    EXPECT_EQ(wf, acyclic(to_matrix(r, n)));
    EXPECT_EQ(wf, check_dwf(DwfClause{p, "t"}, with("r", transitive_closure(r))).ok);
  }
}

TEST(Dwf, IrreflexivityDecides) {
  PredPtr p = make_pred("r", {Var{"e", Sort::integer()}, Var{"e", Sort::integer(), 1}});
  Relation r({{Value(0), Value(1)}, {Value(0), Value(1)}});
  r.insert(std::vector<Value>{Value(0), Value(1)});
  EXPECT_TRUE(is_irreflexive(r));
  EXPECT_TRUE(check_dwf(DwfClause{p, "t"}, with("r", r)).ok);
  r.insert(std::vector<Value>{Value(1), Value(1)});
  Verdict v = check_dwf(DwfClause{p, "t"}, with("r", r));
  EXPECT_FALSE(v.ok);
  ASSERT_TRUE(v.violation);
  EXPECT_TRUE(v.violation->dwf);
}

TEST(CheckClause, Rule8WithEmptyInterpretation) {
  Problem p;
  p.program = parse_program(kChain);
  p.spec = parse_formula("x = 0", p.program);
  Translation t = translate(p);
  Domains d = Domains::parse("x=0..2");
  EXPECT_TRUE(check_clause_set(t.clauses, Interpretation{}, d).ok);
  p.spec = parse_formula("x = 1", p.program);
  Verdict v = check_clause_set(translate(p).clauses, Interpretation{}, d);
  EXPECT_FALSE(v.ok);
  ASSERT_TRUE(v.violation);
  EXPECT_EQ(v.violation->valuation.at(0).second, Value(0));
}

TEST(CheckClause, ExistentialHead) {
  Var x{"x", Sort::integer()};
  PredPtr p = make_pred("p", {x});
  ClauseSet cs;
  cs.declare(p);
  Clause c;
  c.exist_vars = {x};
  c.head_atoms = {Atom{p, {x}}};
  c.head_constraint = ex::gt(ex::var(x), ex::num(Value(0)));
  c.tag = "T";
  cs.clauses.push_back(c);
  Domains d = Domains::parse("x=0..2");
  Interpretation i;
  i.ensure(*p, d).insert(std::vector<Value>{Value(0)});
  EXPECT_FALSE(check_clause_set(cs, i, d).ok);
  i.at("p").insert(std::vector<Value>{Value(2)});
  EXPECT_TRUE(check_clause_set(cs, i, d).ok);
  ClauseSetChecker checker(cs, d);
  EXPECT_TRUE(checker.check(i).ok);
}

TEST(Witness, Rule6UnfairSink) {
  Problem p;
  p.program = parse_program(kSink);
  p.spec = parse_formula("Af x = 1", p.program);
  Domains d = Domains::parse("x=0..2");
  FiniteSystem fs = expand_finite(p.program, d);
  ClauseSet cs;
  FreshNamer n(reserved_names(p.program));
  ClauseBuilder b(cs, n);
  Rule6Preds r = rule6_af_assertion(p, b);
  Interpretation w = witness_rule6(fs, r, d);
  EXPECT_EQ(w.at(r.p->name).count(), 1u);
  EXPECT_TRUE(w.at(r.p->name).contains(std::vector<Value>{Value(2)}));
  EXPECT_FALSE(check_clause_set(cs, w, d).ok);  // the initial state is fair and violates x = 1
}

TEST(Witness, Rule6AcceptedWhenSpecHolds) {
  Problem p;
  p.program = parse_program(kChain);
  p.spec = parse_formula("Af x = 0", p.program);
  Domains d = Domains::parse("x=0..2");
  FiniteSystem fs = expand_finite(p.program, d);
  ASSERT_TRUE(model_check(fs, p.spec).holds);
  ClauseSet cs;
  FreshNamer n(reserved_names(p.program));
  ClauseBuilder b(cs, n);
  Interpretation w = witness_rule6(fs, rule6_af_assertion(p, b), d);
  EXPECT_TRUE(check_clause_set(cs, w, d).ok);
}

TEST(Witness, Rule7ChainDistances) {
  Problem p;
  p.program = parse_program(kChain);
  p.spec = parse_formula("Ef true", p.program);
  Domains d = Domains::parse("x=0..2");
  FiniteSystem fs = expand_finite(p.program, d);
  ClauseSet cs;
  FreshNamer n(reserved_names(p.program));
  ClauseBuilder b(cs, n);
  Rule7Preds r = rule7_ef_assertion(p, b);
  Interpretation w = complete_derived(cs, witness_rule7(fs, r, d), d);
  EXPECT_EQ(w.at(r.q[0]->name).count(), 3u);
  const Relation& rank = w.at(r.r[0]->name);
  // Distances 2, 1, 0 to the fair state.
  EXPECT_EQ(rank.count(), 3u);
  EXPECT_TRUE(rank.contains(std::vector<Value>{Value(0), Value(1)}));
  EXPECT_TRUE(rank.contains(std::vector<Value>{Value(1), Value(2)}));
  EXPECT_TRUE(rank.contains(std::vector<Value>{Value(0), Value(2)}));
  EXPECT_TRUE(check_clause_set(cs, w, d).ok);
}

TEST(Witness, ComposedForEveryHoldingFixture) {
  for (const Fixture* f : fixtures_tagged("finite")) {
    if (f->partial() || !f->expect || !*f->expect) continue;
    LoadedFixture l = load_fixture(*f);
    Translation t = translate(l.problem);
    Verdict v = check_clause_set(t.clauses, compose_witness(t, l.domains), l.domains);
    EXPECT_TRUE(v.ok) << f->name << ": " << (v.violation ? v.violation->str() : "");
  }
}

TEST(Witness, ExistentialNextAux) {
  Problem p;
  p.program = parse_program(kChain);
  p.spec = to_nnf(parse_formula("E X x = 1", p.program));
  Domains d = Domains::parse("x=0..2");
  Translation t = translate(p);
  Interpretation w = compose_witness(t, d);
  EXPECT_TRUE(check_clause_set(t.clauses, w, d).ok);
  const TraceStep* s = &t.trace;
  while (s->rule != Rule::R3) s = &s->children.at(0);
  ASSERT_TRUE(s->aux);
  // From x = 0 the next state has x = 1, so the guess bit is 1.
  EXPECT_TRUE(w.at(s->aux->name).contains(std::vector<Value>{Value(0), Value(1)}));
  EXPECT_FALSE(w.at(s->aux->name).contains(std::vector<Value>{Value(0), Value(0)}));
}

TEST(Fuzz, AcceptedInterpretationsImplyTheSpec) {
  Rng rng(3);
  for (const Fixture* f : ctlehc::testing::small_finite_fixtures(6)) {
    LoadedFixture l = load_fixture(*f);
    Translation t = translate(l.problem);
    ClauseSetChecker checker(t.clauses, l.domains);
    bool holds = model_check(l.problem.program, l.problem.spec, l.domains).holds;
    for (int i = 0; i < 200; ++i) {
      Interpretation I = ctlehc::testing::random_interpretation(t.clauses, l.domains, rng, 0.5);
      I = complete_derived(t.clauses, I, l.domains);
      if (checker.check(I).ok) EXPECT_TRUE(holds) << f->name;
    }
  }
}

TEST(CompleteDerived, ComplementIsExact) {
  Var x{"x", Sort::integer()};
  ClauseSet cs;
  FreshNamer n;
  ClauseBuilder b(cs, n);
  PredPtr p = b.declare("p", {x});
  PredPtr q = b.complement(p);
  Domains d = Domains::parse("x=0..3");
  Interpretation base;
  base.ensure(*p, d).insert(std::vector<Value>{Value(1)});
  Interpretation full = complete_derived(cs, base, d);
  EXPECT_EQ(full.at(q->name).count(), 3u);
  EXPECT_FALSE(full.at(q->name).contains(std::vector<Value>{Value(1)}));
  EXPECT_TRUE(check_clause_set(cs, full, d).ok);
}
