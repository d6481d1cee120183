#include "ctlehc/fixtures.hpp"
#include "ctlehc/frontend.hpp"
#include "ctlehc/interp.hpp"
#include "ctlehc/synthesis.hpp"

#include <gtest/gtest.h>

using namespace ctlehc;

namespace {

enum class Group { Next, CondTrue, CondFalse, Assign };

Group classify(const Expr& disjunct, const PartialProgram& ph) {
  for (const auto& c : conjuncts(disjunct)) {
    if (c->op == ExprOp::Pred && c->pred->name.rfind("u_c_", 0) == 0) return Group::CondTrue;
    if (c->op == ExprOp::Not && c->kids[0]->op == ExprOp::Pred) return Group::CondFalse;
    if (c->op == ExprOp::Pred && c->pred->name.rfind("u_a_", 0) == 0) return Group::Assign;
  }
  (void)ph;
  return Group::Next;
}

FiniteSystem expand(const Program& p, const Domains& d) { return expand_finite(p, d); }

}  // namespace

TEST(HolePredicates, NamesAndArities) {
  LoadedFixture l = load_fixture(fixture("bank"));
  auto u = make_hole_predicates(l.partial);
  ASSERT_EQ(u.size(), 3u);
  EXPECT_EQ(u[0]->name, "u_c_lc");
  EXPECT_EQ(u[0]->arity(), 4u);
  EXPECT_EQ(u[1]->name, "u_a_la1");
  EXPECT_EQ(u[1]->arity(), 8u);
  EXPECT_EQ(hole_predicate(u, l.partial.holes[2]), u[2]);
}

TEST(Bank, DeltaAAndNextUGroups) {
  LoadedFixture l = load_fixture(fixture("bank"));
  SynthEncoding enc = delta_synth(l.partial, l.problem.spec);
  EXPECT_EQ(enc.delta_a_count, 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    const Clause& c = enc.translation.clauses.clauses[i];
    EXPECT_TRUE(c.body_atoms.empty());
    ASSERT_EQ(c.head_atoms.size(), 1u);
    EXPECT_EQ(c.head_atoms[0].pred->name.rfind("u_a_", 0), 0u);
    EXPECT_EQ(c.exist_vars.size(), 4u);
  }
  auto u = make_hole_predicates(l.partial);
  std::map<Group, std::size_t> groups;
  for (const auto& d : disjuncts(build_next_u(l.partial, u))) ++groups[classify(d, l.partial)];
  EXPECT_EQ(groups.size(), 4u);
  EXPECT_EQ(groups[Group::Next], 7u);
  EXPECT_EQ(groups[Group::CondTrue], 1u);
  EXPECT_EQ(groups[Group::CondFalse], 1u);
  EXPECT_EQ(groups[Group::Assign], 2u);
}

TEST(Bank, EncodingWithoutHolesIsPlainTranslation) {
  LoadedFixture l = load_fixture(fixture("toggle-af-b"));
  PartialProgram ph;
  ph.program = l.problem.program;
  ph.program.vars.insert(ph.program.vars.begin(), Var{"pc", Sort::location({"l1"})});
  SynthEncoding enc = delta_synth(ph, l.problem.spec);
  EXPECT_EQ(enc.delta_a_count, 0u);
  EXPECT_TRUE(enc.holes.empty());
}

TEST(MicroBank, PaperFillsModelCheck) {
  LoadedFixture l = load_fixture(fixture("micro-bank"));
  ASSERT_EQ(l.fills.size(), 3u);
  EXPECT_TRUE(model_check(apply_fills(l.partial, l.fills), l.problem.spec, l.domains).holds);
}

TEST(Resolving, TabulatedMatchesSymbolicFills) {
  for (const char* name : {"micro-bank", "syn-cond", "syn-two-holes", "syn-nonzero", "syn-set"}) {
    LoadedFixture l = load_fixture(fixture(name));
    ResolvingFunction psi = tabulate_resolving(l.partial, l.fills, l.domains);
    FiniteSystem a = expand(apply_resolving(l.partial, psi), l.domains);
    FiniteSystem b = expand(apply_fills(l.partial, l.fills), l.domains);
    EXPECT_EQ(a.states, b.states) << name;
    EXPECT_EQ(a.succ, b.succ) << name;
    EXPECT_EQ(a.initial, b.initial) << name;
  }
}

TEST(Resolving, ExtractInvertsInterpretation) {
  LoadedFixture l = load_fixture(fixture("syn-two-holes"));
  ResolvingFunction psi = tabulate_resolving(l.partial, l.fills, l.domains);
  Interpretation I = resolving_interpretation(l.partial, psi, l.domains);
  ResolvingFunction back = extract_resolving(I, l.partial, l.domains);
  EXPECT_EQ(back.cond, psi.cond);
  EXPECT_EQ(back.assign, psi.assign);
}

TEST(Resolving, ValidationRejectsPartialAssignments) {
  LoadedFixture l = load_fixture(fixture("syn-set"));
  ResolvingFunction psi = tabulate_resolving(l.partial, l.fills, l.domains);
  EXPECT_NO_THROW(validate_resolving(l.partial, psi, true));
  psi.assign.begin()->second.clear();
  EXPECT_THROW(validate_resolving(l.partial, psi), Error);
  EXPECT_THROW(validate_resolving(l.partial, ResolvingFunction{}), Error);
}

TEST(Resolving, EnumerationCount) {
  LoadedFixture l = load_fixture(fixture("syn-set"));
  std::size_t n = 0;
  EXPECT_TRUE(for_each_resolving(l.partial, l.domains, 1000, [&](const ResolvingFunction& psi) {
    validate_resolving(l.partial, psi);
    ++n;
    return true;
  }));
  // Two source valuations of b, each with a nonempty successor subset of {false, true}.
  EXPECT_EQ(n, 9u);
  EXPECT_FALSE(for_each_resolving(l.partial, l.domains, 5, [](const ResolvingFunction&) { return true; }));
}

TEST(Synthesis, RoundTripOnMicroPrograms) {
  for (const Fixture* f : fixtures_tagged("synth")) {
    if (!f->has("micro")) continue;
    LoadedFixture l = load_fixture(*f);
    SynthEncoding enc = delta_synth(l.partial, l.problem.spec);
    EnumResult r = enumerate_interpretations(enc.translation.clauses, l.domains);
    ASSERT_NE(r.status, EnumStatus::CapExceeded) << f->name;
    ASSERT_TRUE(f->expect);
    EXPECT_EQ(r.status == EnumStatus::Sat, *f->expect) << f->name;
    if (r.status == EnumStatus::Sat) {
      ResolvingFunction psi = extract_resolving(r.model, l.partial, l.domains);
      EXPECT_NO_THROW(validate_resolving(l.partial, psi)) << f->name;
      EXPECT_TRUE(model_check(apply_resolving(l.partial, psi), l.problem.spec, l.domains).holds) << f->name;
    }
    std::size_t realizable = 0;
    ASSERT_TRUE(for_each_resolving(l.partial, l.domains, 1 << 16, [&](const ResolvingFunction& psi) {
      if (!model_check(apply_resolving(l.partial, psi), l.problem.spec, l.domains).holds) return true;
      ++realizable;
      Interpretation given = resolving_interpretation(l.partial, psi, l.domains);
      Interpretation I = compose_witness(enc.translation, l.domains, given);
      EXPECT_TRUE(check_clause_set(enc.translation.clauses, I, l.domains).ok) << f->name;
      return realizable < 8;
    })) << f->name;
    EXPECT_EQ(realizable > 0, *f->expect) << f->name;
  }
}
