#include "ctlehc/frontend.hpp"
#include "ctlehc/oracle.hpp"
#include "lasso_oracle.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace ctlehc;
using ctlehc::testing::LassoOracle;
using ctlehc::testing::Rng;

namespace {

FiniteSystem chain() {
  Program p = parse_program(R"(
vars { x: int; }
init { x = 0 }
next { (x < 2 & x' = x + 1) | (x = 2 & x' = 2) }
fair { x = 2; }
)");
  return expand_finite(p, Domains::parse("x=0..2"));
}

}  // namespace

TEST(ExpandFinite, ChainSystem) {
  FiniteSystem fs = chain();
  ASSERT_EQ(fs.size(), 3u);
  EXPECT_EQ(fs.transition_count(), 3u);
  EXPECT_TRUE(fs.initial[0]);
  EXPECT_FALSE(fs.initial[1]);
  EXPECT_EQ(fs.fairness.size(), 1u);
  auto s = fs.find(std::vector<Value>{Value(2)});
  ASSERT_TRUE(s);
  EXPECT_EQ(fs.succ[*s], std::vector<std::uint32_t>{*s});
}

TEST(ExpandFinite, TransitionsLeavingTheDomainAreDropped) {
  Program p = parse_program("vars { x: int; }\ninit { x = 0 }\nnext { x' = x + 1 }");
  FiniteSystem fs = expand_finite(p, Domains::parse("x=0..2"));
  EXPECT_EQ(fs.transition_count(), 2u);
  EXPECT_EQ(state_space_size(p, Domains::parse("x=0..2")), 3u);
}

TEST(FairStates, ChainAndDeadEnd) {
  FiniteSystem fs = chain();
  EXPECT_EQ(fair_states(fs, true), (StateSet{true, true, true}));
  fs.fairness[0] = StateSet{true, false, false};
  EXPECT_EQ(fair_states(fs, true), (StateSet{false, false, false}));
  EXPECT_EQ(fair_states(fs, false), (StateSet{true, true, true}));
}

TEST(Gba, OneAcceptanceSetPerUntil) {
  Program p = parse_program("vars { a: bool; b: bool; }\ninit { true }\nnext { true }");
  Formula f = to_nnf(parse_formula("E (a U b) & E G F a", p));
  Gba g1 = build_gba(f->kids[0]->kids[0]);
  EXPECT_EQ(g1.num_acc, 1);
  Gba g2 = build_gba(f->kids[1]->kids[0]);
  EXPECT_EQ(g2.num_acc, 1);
  Gba g3 = build_gba(to_nnf(parse_formula("E X a", p))->kids[0]);
  EXPECT_EQ(g3.num_acc, 0);
}

TEST(ModelChecker, SimpleVerdicts) {
  FiniteSystem fs = chain();
  Program p = parse_program("vars { x: int; }\ninit { true }\nnext { true }");
  EXPECT_TRUE(model_check(fs, parse_formula("A F x = 2", p)).holds);
  EXPECT_TRUE(model_check(fs, parse_formula("A X x = 1", p)).holds);
  EXPECT_FALSE(model_check(fs, parse_formula("E G x = 0", p)).holds);
  EXPECT_TRUE(model_check(fs, parse_formula("Af G F x = 2", p)).holds);
  auto r = model_check(fs, parse_formula("A G x < 2", p));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.failing_initial, std::vector<std::uint32_t>{0});
}

TEST(ModelChecker, FairQuantifiersAreVacuousWithoutFairPaths) {
  FiniteSystem fs = chain();
  fs.fairness[0] = StateSet{true, false, false};
  Program p = parse_program("vars { x: int; }\ninit { true }\nnext { true }");
  EXPECT_TRUE(model_check(fs, parse_formula("Af G false", p)).holds);
  EXPECT_FALSE(model_check(fs, parse_formula("Ef G true", p)).holds);
}

// Tableau checker agrees with explicit lasso enumeration.
TEST(ModelChecker, AgreesWithLassoOracleOnRandomSystems) {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    FiniteSystem fs = ctlehc::testing::random_system(rng, 1 + rng() % 4, 2, i % 3 == 0);
    Formula f = ctlehc::testing::random_formula(rng, fs, 2, true);
    ModelChecker mc(fs);
    LassoOracle lasso(fs, 12);
    EXPECT_EQ(mc.label(f), lasso.label(f)) << "case " << i << ": " << to_string(f);
  }
}

TEST(ModelChecker, AgreesWithLassoOracleOnFixtures) {
  for (const Fixture* f : ctlehc::testing::small_finite_fixtures(6)) {
    LoadedFixture l = load_fixture(*f);
    FiniteSystem fs = expand_finite(l.problem.program, l.domains);
    LassoOracle lasso(fs, 14);
    bool holds = model_check(fs, l.problem.spec).holds;
    EXPECT_EQ(holds, lasso.holds(l.problem.spec)) << f->name;
    ASSERT_TRUE(f->expect) << f->name;
    EXPECT_EQ(holds, *f->expect) << f->name;
  }
}

TEST(LassoOracle, HandExamples) {
  FiniteSystem fs = chain();
  Program p = parse_program("vars { x: int; }\ninit { true }\nnext { true }");
  LassoOracle o(fs, 8);
  EXPECT_TRUE(o.holds(parse_formula("A F G x = 2", p)));
  EXPECT_FALSE(o.holds(parse_formula("E G x != 2", p)));
}
