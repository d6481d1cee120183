#include "ctlehc/frontend.hpp"
#include "ctlehc/oracle.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace ctlehc;
using ctlehc::testing::Rng;

namespace {

const char* kToggle = R"(
vars { b: bool; x: int; }
domain { x: 0..2; }
init { !b & x = 0 }
next { b' = !b & x' = x }
fair { b; }
)";

}  // namespace

TEST(Lexer, PrimesAndRanges) {
  auto toks = detail::lex("x'' = 0..3");
  ASSERT_GE(toks.size(), 5u);
  EXPECT_EQ(toks[0].kind, detail::Tok::Ident);
  EXPECT_EQ(toks[0].primes, 2);
  EXPECT_EQ(toks[3].kind, detail::Tok::DotDot);
}

TEST(Parser, ProgramFile) {
  ProgramFile pf = parse_program_file(kToggle);
  ASSERT_EQ(pf.program.vars.size(), 2u);
  EXPECT_EQ(pf.program.vars[0].sort.kind(), SortKind::Bool);
  EXPECT_EQ(pf.program.fairness.size(), 1u);
  EXPECT_EQ(pf.domains.values(pf.program.vars[1]).size(), 3u);
  EXPECT_TRUE(pf.holes.empty());
  EXPECT_EQ(to_string(pf.program.next), "b' = !b & x' = x");
}

TEST(Parser, PartialProgramHoles) {
  auto pp = parse_partial_program(R"(
vars { pc: {l1, l2, l3}; x: int; }
init { pc = l1 }
next { pc = l3 & pc' = l3 & x' = x }
hole cond l1 l2 l3;
hole assign l2 l3;
)");
  ASSERT_EQ(pp.holes.size(), 2u);
  EXPECT_EQ(pp.holes[0].kind, Hole::Kind::Cond);
  EXPECT_EQ(pp.holes[0].false_target, "l3");
  EXPECT_EQ(pp.holes[1].target, "l3");
  EXPECT_EQ(pp.pc().name, "pc");
  EXPECT_EQ(pp.data_vars().size(), 1u);
}

TEST(Parser, ErrorsCarrySpans) {
  try {
    parse_program("vars { x: int; }\ninit { x = }\nnext { true }");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().line, 2);
  }
  EXPECT_THROW(parse_program("vars { x: int; }\ninit { y = 0 }\nnext { true }"), Error);
  EXPECT_THROW(parse_program("vars { x: int; }\ninit { x' = 0 }\nnext { true }"), Error);
}

TEST(Parser, FormulaShapes) {
  Program p = parse_program(kToggle);
  Formula f = parse_formula("A G (b | !b)", p);
  EXPECT_EQ(f->kind, FKind::A);
  EXPECT_EQ(f->kids[0]->kind, FKind::G);
  Formula g = parse_formula("Ef (b U x = 1) & Af F b", p);
  EXPECT_EQ(g->kind, FKind::And);
  EXPECT_EQ(g->kids[0]->kind, FKind::Ef);
  EXPECT_EQ(g->kids[0]->kids[0]->kind, FKind::U);
  EXPECT_EQ(g->kids[1]->kind, FKind::Af);
  EXPECT_TRUE(is_state_formula(g));
  EXPECT_FALSE(is_state_formula(parse_formula("E G b", p)->kids[0]));
  EXPECT_THROW(parse_formula("G b", p), Error);
}

TEST(Parser, PrintParseRoundTrip) {
  Program p = parse_program(kToggle);
  for (const char* text : {"A G (b | !b)", "E (b U X x = 1)", "Af F E G !b", "E X (b & x != 2) | A G F b"}) {
    Formula f = parse_formula(text, p);
    Formula g = parse_formula(print_formula(f), p);
    EXPECT_TRUE(equal(f, g)) << text << " printed as " << print_formula(f);
  }
}

TEST(Nnf, PushesNegationIntoAssertions) {
  Program p = parse_program(kToggle);
  Formula f = to_nnf(parse_formula("!A G (b -> E X !b)", p));
  EXPECT_EQ(f->kind, FKind::E);
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    EXPECT_NE(g->kind, FKind::Not);
    EXPECT_NE(g->kind, FKind::F);
    for (const auto& k : g->kids) walk(k);
  };
  walk(f);
}

// NNF preserves the labelling on random systems.
TEST(Nnf, PreservesSemantics) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    FiniteSystem fs = ctlehc::testing::random_system(rng, 1 + rng() % 4, 2, i % 2 == 0);
    Formula f = ctlehc::testing::random_formula(rng, fs, 2, true);
    Formula neg = fm::not_(f);
    ModelChecker mc(fs);
    auto a = mc.label(f);
    auto b = mc.label(to_nnf(f));
    auto c = mc.label(to_nnf(neg));
    EXPECT_EQ(a, b) << to_string(f);
    for (std::size_t s = 0; s < fs.size(); ++s) EXPECT_NE(a[s], c[s]) << to_string(f);
  }
}
