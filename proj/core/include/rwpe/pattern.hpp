#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "rwpe/expr.hpp"
#include "rwpe/term_ops.hpp"

namespace rwpe {

enum class PatternKind {
  Wildcard,       // ?x, matches anything of its type
  ConstWildcard,  // 'x, matches constants only
  Ident,          // a specific identifier
  App,            // application of patterns
  Clip,           // clip[l,u] whose bounds are literals or constant pattern variables
};

/// A clip bound inside a pattern: a constant pattern variable or a literal.
struct ClipParam {
  int var = -1;
  Int value;
  bool is_var() const noexcept { return var >= 0; }
};

struct PatternNode;
using Pattern = std::shared_ptr<const PatternNode>;

struct PatternNode {
  PatternKind kind;
  Type type;
  int var = -1;  // Wildcard / ConstWildcard: pattern variable index
  std::optional<rwpe::Ident> ident;
  Pattern fn;
  Pattern arg;
  ClipParam lo;
  ClipParam hi;
};

Pattern pat_wildcard(int var, Type type);
Pattern pat_const(int var, Type type);
Pattern pat_ident(Ident id);
/// Throws TypeError when the argument type does not fit.
Pattern pat_app(Pattern fn, Pattern arg);
Pattern pat_apps(Pattern fn, const std::vector<Pattern>& args);
Pattern pat_clip(ClipParam lo, ClipParam hi);

/// Pattern-variable bindings indexed by variable; unbound slots are null.
using Bindings = std::vector<Expr>;

/// A wildcard, constant wildcard or clip pattern: matched by a check at the
/// leaf rather than by decomposition.
inline bool is_wildcard_like(const PatternNode& p) {
  return p.kind == PatternKind::Wildcard || p.kind == PatternKind::ConstWildcard ||
         p.kind == PatternKind::Clip;
}

/// Checks a wildcard-like pattern against `e` and records its bindings.
bool bind_wildcard_like(const PatternNode& p, const Expr& e, Bindings& out);

/// Root-only structural match. ConstWildcard binds only constants.
std::optional<Bindings> match_pattern(const Pattern& p, const Expr& e, std::size_t num_vars);

/// Pattern variables in left-to-right order (repeats included).
void pattern_vars(const Pattern& p, std::vector<int>& out);

}  // namespace rwpe
