#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "rwpe/decision_tree.hpp"
#include "rwpe/nbe.hpp"
#include "rwpe/rule_syntax.hpp"
#include "rwpe/syntax.hpp"

namespace {

// Root-level match targets covering hits on early and late rules and misses.
const std::vector<rwpe::Expr>& targets() {
  static const std::vector<rwpe::Expr> terms = [] {
    rwpe::TermContext ctx;
    std::vector<rwpe::Expr> out;
    for (const char* text : {"x + 0", "0 + x", "x * 1", "y / 8", "y / 6", "3 + 4", "7 * 6", "x - y", "x >> 2",
                             "(x + y) * (y + x)", "fst (x, y)", "snd (x, y)"}) {
      out.push_back(rwpe::parse_term(text, ctx));
    }
    return out;
  }();
  return terms;
}

void BM_Match_DecisionTree(benchmark::State& state) {
  const rwpe::RuleSet rules(rwpe::standard_rules());
  const auto accept_all = [](int, const rwpe::Bindings&) { return true; };
  for (auto _ : state) {
    for (const auto& e : targets()) benchmark::DoNotOptimize(rwpe::eval_decision_tree(rules.tree(), e, accept_all));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(targets().size()));
}

void BM_Match_Naive(benchmark::State& state) {
  const auto& rules = rwpe::standard_rules();
  for (auto _ : state) {
    for (const auto& e : targets()) benchmark::DoNotOptimize(rwpe::naive_first_match(rules, e));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(targets().size()));
}

void BM_CompileRules(benchmark::State& state) {
  const auto& rules = rwpe::standard_rules();
  for (auto _ : state) benchmark::DoNotOptimize(rwpe::compile_rules(rules));
}

}  // namespace

BENCHMARK(BM_Match_DecisionTree);
BENCHMARK(BM_Match_Naive);
BENCHMARK(BM_CompileRules);

BENCHMARK_MAIN();
