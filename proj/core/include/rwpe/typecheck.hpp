#pragma once

#include <unordered_map>

#include "rwpe/expr.hpp"

namespace rwpe {

using TypeEnv = std::unordered_map<VarId, Type>;

/// Returns the type of `e`. Free variables must appear in `env` unless
/// `allow_free` is set, in which case their annotated type is trusted.
/// Throws TypeError (UnboundVariable / TypeMismatch) with a path such as
/// `app.fn/abs.body`.
Type type_check(const Expr& e, const TypeEnv& env, bool allow_free = false);

/// Type check treating every free variable as declared at its annotated type.
Type type_check(const Expr& e);

}  // namespace rwpe
