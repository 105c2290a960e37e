#include <benchmark/benchmark.h>

#include "rwpe/bench.hpp"
#include "rwpe/rule_syntax.hpp"
#include "rwpe/term_ops.hpp"

namespace {

using rwpe::EngineKind;
using rwpe::Family;

const rwpe::RuleSet& compiled_rules() {
  static const rwpe::RuleSet rules(rwpe::standard_rules());
  return rules;
}

// Engines run on a large-stack worker thread, so timings use wall clock.
// Normalizes one family instance per iteration; the argument is n (and m
// when the family has a second size parameter).
void run_cell(benchmark::State& state, Family family, EngineKind engine) {
  const int n = static_cast<int>(state.range(0));
  const int m = state.range(1) >= 0 ? static_cast<int>(state.range(1)) : 0;
  const rwpe::FamilyInstance inst = rwpe::make_instance(family, n, m);
  rwpe::BenchOptions options;
  std::uint64_t steps = 0;
  for (auto _ : state) {
    rwpe::EngineRun run = rwpe::run_engine(engine, inst.input, rwpe::standard_rules(), compiled_rules(), options);
    benchmark::DoNotOptimize(run.output);
    steps = engine == EngineKind::Nbe ? run.stats.total_rule_applications() + run.stats.total_eliminator_steps()
                                      : rwpe::trace_cost(run.trace).steps;
  }
  // Rule plus eliminator steps for NbE; trace length for the naive engines.
  state.counters["steps"] = static_cast<double>(steps);
  state.counters["input_nodes"] = static_cast<double>(rwpe::term_stats(inst.input).node_count);
}

void BM_UnderLets_Nbe(benchmark::State& s) { run_cell(s, Family::UnderLetsPlus0, EngineKind::Nbe); }
void BM_UnderLets_NaiveTopDown(benchmark::State& s) { run_cell(s, Family::UnderLetsPlus0, EngineKind::NaiveTopDown); }
void BM_Plus0Tree_Nbe(benchmark::State& s) { run_cell(s, Family::Plus0Tree, EngineKind::Nbe); }
void BM_Plus0Tree_NaiveBottomUp(benchmark::State& s) { run_cell(s, Family::Plus0Tree, EngineKind::NaiveBottomUp); }
void BM_LiftLetsMap_Nbe(benchmark::State& s) { run_cell(s, Family::LiftLetsMap, EngineKind::Nbe); }
void BM_LiftLetsMap_NaiveBottomUp(benchmark::State& s) { run_cell(s, Family::LiftLetsMap, EngineKind::NaiveBottomUp); }

}  // namespace

BENCHMARK(BM_UnderLets_Nbe)->ArgsProduct({{16, 64, 256, 1024}, {-1}})->UseRealTime();
BENCHMARK(BM_UnderLets_NaiveTopDown)->ArgsProduct({{16, 64, 256}, {-1}})->UseRealTime();
BENCHMARK(BM_Plus0Tree_Nbe)->ArgsProduct({{2, 4, 6, 8}, {4}})->UseRealTime();
BENCHMARK(BM_Plus0Tree_NaiveBottomUp)->ArgsProduct({{2, 4, 6, 8}, {4}})->UseRealTime();
BENCHMARK(BM_LiftLetsMap_Nbe)->ArgsProduct({{2, 4, 8}, {2, 4, 8}})->UseRealTime();
BENCHMARK(BM_LiftLetsMap_NaiveBottomUp)->ArgsProduct({{2, 4, 8}, {2, 4}})->UseRealTime();
