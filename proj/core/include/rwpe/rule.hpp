#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rwpe/expr.hpp"
#include "rwpe/pattern.hpp"
#include "rwpe/side_condition.hpp"

namespace rwpe {

struct PatternVar {
  std::string name;
  Type type;
  bool constant = false;  // declared with the apostrophe marker
  VarId id = 0;           // the Var standing for this variable in the rhs
};

/// A right-hand-side value computed from constant bindings when the rule
/// fires: an integer literal `'(expr)` or a clip function `clip[lo,hi]`.
struct ComputedVar {
  enum class Kind { IntValue, ClipFn };
  Kind kind;
  VarId id;
  CondExpr value;  // IntValue
  CondExpr lo;     // ClipFn
  CondExpr hi;     // ClipFn
};

struct RewriteRule {
  std::string name;
  std::vector<PatternVar> vars;
  Pattern lhs;
  Expr rhs;  // pattern variables and computed values appear as free Vars
  std::optional<CondExpr> when;
  std::vector<ComputedVar> computed;
  int priority = 0;

  std::size_t num_vars() const noexcept { return vars.size(); }
};

struct WfError {
  enum class Kind {
    NonConstantInSideCondition,
    UnboundRhsVar,
    TypeMismatch,
    NonlinearPattern,
    BareWildcardLhs,
    NonConstantInComputedValue,
  };
  Kind kind;
  std::string var;
  std::string message;
};

const char* to_string(WfError::Kind kind);

/// Empty iff the rule is well formed.
std::vector<WfError> check_rule_wf(const RewriteRule& rule);

/// Values for the rhs free variables of a matched rule: pattern variables
/// bound to the matched subterms and computed values evaluated. nullopt when
/// the side condition is false or a computed value is undefined.
std::optional<std::vector<std::pair<VarId, Expr>>> prepare_instantiation(const RewriteRule& rule,
                                                                         const Bindings& bindings);

}  // namespace rwpe
