#include "ctlehc/emit.hpp"
#include "ctlehc/fixtures.hpp"
#include "ctlehc/interp.hpp"
#include "ctlehc/synthesis.hpp"
#include "ctlehc/trans.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace ctlehc;

namespace {

void BM_TranslateRobots(benchmark::State& state) {
  LoadedFixture l = load_fixture(fixture("robots"));
  for (auto _ : state) benchmark::DoNotOptimize(translate(l.problem));
}
BENCHMARK(BM_TranslateRobots);

void BM_EncodeBank(benchmark::State& state) {
  LoadedFixture l = load_fixture(fixture("bank"));
  for (auto _ : state) benchmark::DoNotOptimize(delta_synth(l.partial, l.problem.spec));
}
BENCHMARK(BM_EncodeBank);

void BM_EmitParseRobots(benchmark::State& state) {
  ClauseSet cs = translate(load_fixture(fixture("robots")).problem).clauses;
  for (auto _ : state) benchmark::DoNotOptimize(parse_clauses_text(emit_clauses_text(cs)));
}
BENCHMARK(BM_EmitParseRobots);

void BM_ModelCheckRobotsMini(benchmark::State& state) {
  LoadedFixture l = load_fixture(fixture("robots-mini"));
  FiniteSystem fs = expand_finite(l.problem.program, l.domains);
  for (auto _ : state) benchmark::DoNotOptimize(model_check(fs, l.problem.spec));
}
BENCHMARK(BM_ModelCheckRobotsMini)->Unit(benchmark::kMillisecond);

void BM_ComposeAndCheck(benchmark::State& state) {
  LoadedFixture l = load_fixture(fixture("counter-ag-ef"));
  Translation t = translate(l.problem);
  for (auto _ : state) {
    Interpretation w = compose_witness(t, l.domains);
    benchmark::DoNotOptimize(check_clause_set(t.clauses, w, l.domains));
  }
}
BENCHMARK(BM_ComposeAndCheck)->Unit(benchmark::kMicrosecond);

void BM_CompiledCheck(benchmark::State& state) {
  LoadedFixture l = load_fixture(fixture("counter-ag-ef"));
  Translation t = translate(l.problem);
  Interpretation w = compose_witness(t, l.domains);
  ClauseSetChecker checker(t.clauses, l.domains);
  for (auto _ : state) benchmark::DoNotOptimize(checker.check(w));
}
BENCHMARK(BM_CompiledCheck)->Unit(benchmark::kMicrosecond);

void BM_EnumerateMicro(benchmark::State& state, const char* name) {
  LoadedFixture l = load_fixture(fixture(name));
  ClauseSet cs = l.partial.holes.empty() ? translate(l.problem).clauses
                                         : delta_synth(l.partial, l.problem.spec).translation.clauses;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_interpretations(cs, l.domains));
}
BENCHMARK_CAPTURE(BM_EnumerateMicro, toggle_af_b, "toggle-af-b")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EnumerateMicro, fair_a_f_b, "fair-a-f-b")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EnumerateMicro, syn_cond, "syn-cond")->Unit(benchmark::kMillisecond);

void BM_TransitiveClosure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Value> axis;
  for (std::size_t i = 0; i < n; ++i) axis.push_back(Value(static_cast<std::int64_t>(i)));
  Relation r({axis, axis});
  std::mt19937 rng(1);
  for (std::size_t k = 0; k < r.space(); ++k) r.set(k, rng() % 8 == 0);
  for (auto _ : state) benchmark::DoNotOptimize(transitive_closure(r));
}
BENCHMARK(BM_TransitiveClosure)->Arg(6)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
