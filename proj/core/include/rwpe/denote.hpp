#pragma once

#include <map>
#include <string>
#include <unordered_map>

#include "rwpe/expr.hpp"
#include "rwpe/value.hpp"

namespace rwpe {

using ValueEnv = std::unordered_map<VarId, Value>;

/// Interpretations of user-declared opaque symbols, keyed by name.
using OpaqueImpls = std::map<std::string, Value, std::less<>>;

/// Call-by-value big-step evaluation. Let evaluates its right-hand side once.
/// Throws EvalError on division by zero, unbound variables, undefined
/// exponents and missing opaque interpretations.
Value denote(const Expr& e, const ValueEnv& env = {}, const OpaqueImpls* opaques = nullptr);

/// The semantic function of an identifier.
Value denote_ident(const Ident& id, const OpaqueImpls* opaques = nullptr);

}  // namespace rwpe
