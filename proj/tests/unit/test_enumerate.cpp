#include "ctlehc/fixtures.hpp"
#include "ctlehc/interp.hpp"
#include "ctlehc/synthesis.hpp"
#include "ctlehc/trans.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace ctlehc;
using ctlehc::testing::Rng;

namespace {

// Every interpretation of the base predicates, derived ones completed.
std::uint64_t brute_force_count(const ClauseSet& cs, const Domains& d) {
  std::vector<PredPtr> base;
  for (const auto& p : cs.preds)
    if (!cs.derivation_of(p->name)) base.push_back(p);
  Interpretation I;
  std::vector<std::pair<Relation*, std::size_t>> bits;
  for (const auto& p : base) I.ensure(*p, d);
  for (const auto& p : base)
    for (std::size_t k = 0; k < I.at(p->name).space(); ++k) bits.emplace_back(&I.at(p->name), k);
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits.size()); ++m) {
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i].first->set(bits[i].second, (m >> i) & 1);
    if (check_clause_set(cs, complete_derived(cs, I, d), d).ok) ++count;
  }
  return count;
}

ClauseSet random_clauses(Rng& rng) {
  ClauseSet cs;
  FreshNamer n;
  ClauseBuilder b(cs, n);
  Var x{"x", Sort::integer()};
  Var y = x.primed();
  PredPtr p = b.declare("p", {x});
  PredPtr q = b.declare("q", {x});
  auto lit = [&](const Var& v) {
    Expr a = ex::pred(rng() % 2 ? p : q, {v});
    return rng() % 3 == 0 ? ex::not_(a) : a;
  };
  auto cmp = [&](const Var& v) { return ex::cmp(rng() % 2 ? ExprOp::Le : ExprOp::Ge, ex::var(v), ex::num(Value(static_cast<std::int64_t>(rng() % 3)))); };
  for (int i = 0, m = 1 + static_cast<int>(rng() % 3); i < m; ++i) {
    Expr body = rng() % 2 ? cmp(x) : ex::and_(cmp(x), lit(x));
    switch (rng() % 3) {
      case 0: b.add("T", body, {}, lit(x)); break;
      case 1: b.add("T", body, {y}, ex::and_(ex::ne(ex::var(y), ex::var(x)), lit(y))); break;
      default: b.add("T", body, {}, ex::or_(lit(x), cmp(x))); break;
    }
  }
  return cs;
}

}  // namespace

TEST(Enumerate, TrueImpliesFalseIsUnsat) {
  ClauseSet cs;
  Clause c;
  c.head_constraint = ex::f();
  c.tag = "T";
  cs.clauses.push_back(c);
  EnumResult r = enumerate_interpretations(cs, Domains{});
  EXPECT_EQ(r.status, EnumStatus::Unsat);
}

TEST(Enumerate, NegationPairOverOneElement) {
  ClauseSet cs;
  FreshNamer n;
  ClauseBuilder b(cs, n);
  PredPtr p = b.declare("p", {Var{"x", Sort::integer()}});
  b.complement(p);
  EnumOptions opt;
  opt.raw = true;
  opt.count_all = true;
  EnumResult r = enumerate_interpretations(cs, Domains::parse("x=0..0"), opt);
  EXPECT_EQ(r.status, EnumStatus::Sat);
  EXPECT_EQ(r.models, 2u);
}

TEST(Enumerate, CapIsReportedNotUnsat) {
  LoadedFixture l = load_fixture(fixture("toggle-af-b"));
  Translation t = translate(l.problem);
  EnumOptions opt;
  opt.max_total_bits = 1;
  EnumResult r = enumerate_interpretations(t.clauses, l.domains, opt);
  EXPECT_EQ(r.status, EnumStatus::CapExceeded);
  EXPECT_FALSE(r.cap_reason.empty());
}

TEST(Enumerate, AgreesWithBruteForceOnRandomClauseSets) {
  Rng rng(17);
  Domains d = Domains::parse("x=0..2");
  for (int i = 0; i < 150; ++i) {
    ClauseSet cs = random_clauses(rng);
    std::uint64_t expected = brute_force_count(cs, d);
    EnumResult first = enumerate_interpretations(cs, d);
    EXPECT_EQ(first.status == EnumStatus::Sat, expected > 0) << "case " << i;
    if (first.status == EnumStatus::Sat) EXPECT_TRUE(check_clause_set(cs, first.model, d).ok) << "case " << i;
    EnumOptions all;
    all.count_all = true;
    EXPECT_EQ(enumerate_interpretations(cs, d, all).models, expected) << "case " << i;
  }
}

TEST(Enumerate, MicroVerificationMatchesOracle) {
  std::size_t unsat = 0, checked = 0;
  for (const Fixture* f : fixtures_tagged("micro")) {
    if (f->partial()) continue;
    LoadedFixture l = load_fixture(*f);
    Translation t = translate(l.problem);
    EnumResult r = enumerate_interpretations(t.clauses, l.domains);
    ASSERT_NE(r.status, EnumStatus::CapExceeded) << f->name << ": " << r.cap_reason;
    const bool holds = model_check(l.problem.program, l.problem.spec, l.domains).holds;
    EXPECT_EQ(r.status == EnumStatus::Sat, holds) << f->name;
    if (r.status == EnumStatus::Sat) EXPECT_TRUE(check_clause_set(t.clauses, r.model, l.domains).ok) << f->name;
    unsat += r.status == EnumStatus::Unsat;
    ++checked;
  }
  EXPECT_GE(checked, 10u);
  EXPECT_GE(unsat, 2u);
}

TEST(Enumerate, StatusNames) {
  EXPECT_EQ(status_name(EnumStatus::Sat), "sat");
  EXPECT_EQ(status_name(EnumStatus::Unsat), "unsat");
}
