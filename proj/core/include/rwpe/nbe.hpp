#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rwpe/decision_tree.hpp"
#include "rwpe/expr.hpp"
#include "rwpe/rule.hpp"
#include "rwpe/stack.hpp"

namespace rwpe {

struct EngineConfig {
  /// Maximum number of consecutive rule applications at one node.
  std::size_t fuel = 10000;
  /// Maximum rule applications plus eliminator steps per rewrite_top call.
  std::uint64_t budget = 10'000'000;
  bool inline_constants = true;
  bool inline_variables = true;
  bool name_cons_cells = true;
  bool collect_stats = true;
  /// Maximum nesting of reduce/apply calls.
  std::size_t max_depth = 200000;
  /// Stack size of the worker thread rewrite_top runs on; 0 runs inline.
  std::size_t stack_bytes = kDefaultStackBytes;
  /// Called with every term handed to the head rewriter.
  std::function<void(const Expr&)> on_rewrite_head;
};

struct RewriteStats {
  std::map<std::string, std::uint64_t> rule_applications;
  /// Built-in eliminator computation steps: list_rect_nil, list_rect_cons,
  /// nat_rect_zero, nat_rect_succ.
  std::map<std::string, std::uint64_t> eliminator_steps;
  std::uint64_t nodes_visited = 0;
  std::uint64_t lets_lifted = 0;
  std::uint64_t lets_inlined = 0;

  std::uint64_t total_rule_applications() const;
  std::uint64_t total_eliminator_steps() const;
  /// One `key=value` per line.
  std::string to_kv() const;
};

/// Rules together with their compiled decision tree.
class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::vector<RewriteRule> rules);

  const std::vector<RewriteRule>& rules() const noexcept { return rules_; }
  const DecisionTree& tree() const noexcept { return tree_; }
  bool empty() const noexcept { return rules_.empty(); }

 private:
  std::vector<RewriteRule> rules_;
  DecisionTree tree_;
};

struct RewriteResult {
  Expr expr;
  RewriteStats stats;
};

/// Rewrites at the root of a base-typed term only, re-reducing each
/// instantiated right-hand side. Returns nullopt when no rule fires.
/// Throws FuelExhausted / BudgetExhausted.
std::optional<Expr> rewrite_head(const Expr& e, const RuleSet& rules, const EngineConfig& cfg, RewriteStats& stats);

/// Normalizes `e` by evaluation, rewriting every base-typed residual node
/// bottom-up and lifting lets. Free variables are treated as opaque.
/// Throws TypeError on ill-typed input and EngineError on resource limits.
RewriteResult rewrite_top(const Expr& e, const RuleSet& rules, const EngineConfig& cfg = {});

}  // namespace rwpe
