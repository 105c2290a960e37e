#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rwpe/errors.hpp"
#include "rwpe/expr.hpp"
#include "rwpe/rule.hpp"

namespace rwpe {

/// Traversal order of the one-step rewriters: TopDown tries nodes in
/// pre-order (leftmost-outermost), BottomUp in post-order (leftmost-innermost).
enum class Order { TopDown, BottomUp };

/// Built-in rewrite schemas available to the baseline besides user rules.
struct BaselineConfig {
  bool beta = true;          // (\x. b) a  ->  b[a/x]
  bool eliminators = true;   // list_rect / nat_rect on constructors
  bool let_inline = true;    // let x = v in b  ->  b[v/x] for variables and constants
  bool let_lift = true;      // f .. (let x = r in b) ..  ->  let x = r in f .. b ..
};

struct TraceStep {
  std::string rule;
  /// Child indices from the root: Abs 0 = body; App 0 = fn, 1 = arg;
  /// LetIn 0 = rhs, 1 = body.
  std::vector<int> path;
  std::size_t before_size = 0;  // rewritten subterm before the step
  std::size_t after_size = 0;   // rewritten subterm after the step
  std::size_t goal_size = 0;    // whole term before the step
};

/// Applies the first applicable rewrite at the first position in `order`.
/// Rewriting never enters lambda bodies. User rules are tried in order
/// before the built-in schemas. Substitution copies terms.
std::optional<std::pair<Expr, TraceStep>> rewrite_once(const Expr& e, const std::vector<RewriteRule>& rules,
                                                       Order order, const BaselineConfig& cfg = {});

struct ExhaustiveResult {
  Expr expr;
  std::vector<TraceStep> trace;
};

class StepBudgetExhausted : public EngineError {
 public:
  StepBudgetExhausted(std::size_t max_steps, ExhaustiveResult partial)
      : EngineError("step budget of " + std::to_string(max_steps) + " exhausted"), partial_(std::move(partial)) {}
  const ExhaustiveResult& partial() const noexcept { return partial_; }

 private:
  ExhaustiveResult partial_;
};

/// Iterates rewrite_once until no rewrite applies. Throws StepBudgetExhausted
/// (carrying the partial trace) after `max_steps` steps.
ExhaustiveResult rewrite_exhaustive(const Expr& e, const std::vector<RewriteRule>& rules, Order order,
                                    std::size_t max_steps, const BaselineConfig& cfg = {});

struct TraceCost {
  std::size_t steps = 0;
  std::uint64_t total_goal_size = 0;
};

TraceCost trace_cost(const std::vector<TraceStep>& trace);

/// Number of trace steps taken by the given rule or schema.
std::size_t count_steps(const std::vector<TraceStep>& trace, const std::string& rule);

/// Re-applies each recorded step (rule at path) to `e`. Throws Error if a
/// step does not apply.
Expr replay(const Expr& e, const std::vector<TraceStep>& trace, const std::vector<RewriteRule>& rules,
            const BaselineConfig& cfg = {});

}  // namespace rwpe
