#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rwpe/pattern.hpp"
#include "rwpe/rule.hpp"

namespace rwpe {

struct DecisionNode;
using DecisionTree = std::shared_ptr<const DecisionNode>;

/// Binding or guard performed when a leaf is reached: the wildcard-like
/// pattern is checked against the subterm at `occurrence`.
struct LeafCheck {
  int occurrence;
  Pattern pattern;
};

struct DecisionNode {
  enum class Kind { TryLeaf, Failure, Switch, Swap };
  Kind kind = Kind::Failure;

  // TryLeaf
  int rule = -1;
  std::size_t num_vars = 0;
  std::vector<LeafCheck> checks;
  DecisionTree on_failure;

  // Switch
  std::vector<std::pair<Ident, DecisionTree>> icases;
  DecisionTree app_case;
  DecisionTree default_case;

  // Swap
  std::size_t swap_index = 0;
  DecisionTree cont;
};

/// Compiles rule left-hand sides into a decision tree whose evaluation picks
/// the first rule (by position in `rules`) that matches. Subterms are
/// addressed by occurrence ids: the root is 0 and each application split
/// allocates the next two ids. Throws RuleError on an empty rule set, a bare
/// wildcard left-hand side or a nonlinear pattern.
DecisionTree compile_rules(const std::vector<RewriteRule>& rules);

/// Instrumentation for tree evaluation.
struct MatchProbe {
  /// Head inspections per occurrence id.
  std::vector<std::size_t> head_inspections;
  std::size_t leaves_tried = 0;
};

/// Walks `tree` over `e`. At each leaf whose guards hold, `try_rule` decides
/// whether to accept; the first accepted rule index is returned. Throws
/// MalformedTree on an out-of-range swap.
std::optional<int> eval_decision_tree(const DecisionTree& tree, const Expr& e,
                                      const std::function<bool(int, const Bindings&)>& try_rule,
                                      MatchProbe* probe = nullptr);

/// First rule (in order) whose pattern matches at the root; the naive oracle.
std::optional<std::pair<int, Bindings>> naive_first_match(const std::vector<RewriteRule>& rules, const Expr& e);

/// Indented rendering of a tree, for diagnostics.
std::string to_string(const DecisionTree& tree);

/// Number of Switch nodes whose icases contain `id`.
std::size_t count_switches_on(const DecisionTree& tree, const Ident& id);

}  // namespace rwpe
