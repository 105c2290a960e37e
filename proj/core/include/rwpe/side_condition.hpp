#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rwpe/int.hpp"
#include "rwpe/pattern.hpp"

namespace rwpe {

enum class CondOp { Lit, BoolLit, Var, Add, Sub, Mul, Pow, Log2Floor, Eq, Lt, Le, And, Or, Not };

struct CondNode;
/// Side-condition expression over pattern variables (by index).
using CondExpr = std::shared_ptr<const CondNode>;

struct CondNode {
  CondOp op;
  Int value;     // Lit; BoolLit uses 0/1
  int var = -1;  // Var
  CondExpr lhs;  // unary operand or left operand
  CondExpr rhs;
};

CondExpr cond_lit(Int value);
CondExpr cond_bool(bool value);
CondExpr cond_var(int var);
CondExpr cond_unary(CondOp op, CondExpr operand);
CondExpr cond_binary(CondOp op, CondExpr lhs, CondExpr rhs);

/// Result of evaluating a condition subexpression. nullopt marks an undefined
/// value (log2floor of a nonpositive number, negative exponent).
using CondValue = std::optional<std::variant<Int, bool>>;

/// Evaluates `c` over integer/boolean literal bindings. Undefined arithmetic
/// makes the whole condition false. Throws NonConstantBinding when a variable
/// is unbound or bound to a non-literal.
bool eval_side_condition(const CondExpr& c, const Bindings& b);

/// Integer value of an arithmetic condition expression, nullopt if undefined.
std::optional<Int> eval_cond_int(const CondExpr& c, const Bindings& b);

/// Pattern variables referenced by `c`.
void cond_vars(const CondExpr& c, std::vector<int>& out);

/// Renders `c` with variable names supplied by `name_of`.
std::string to_string(const CondExpr& c, const std::function<std::string(int)>& name_of);

}  // namespace rwpe
