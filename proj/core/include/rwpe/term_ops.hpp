#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "rwpe/expr.hpp"

namespace rwpe {

struct TermStats {
  /// Nodes, counting an identifier-headed application spine as one operator
  /// node plus its arguments.
  std::size_t node_count = 0;
  std::size_t let_count = 0;
  /// Deepest nesting of Abs/LetIn binders.
  std::size_t max_binder_depth = 0;
};

TermStats term_stats(const Expr& e);

/// Raw AST size: every Var, Abs, App, LetIn and Ident node counts once.
std::size_t term_size(const Expr& e);

/// Equality up to consistent renaming of bound variables; free variables
/// compare by identity.
bool alpha_eq(const Expr& a, const Expr& b);

struct FreeVar {
  VarId id;
  Type type;
  const std::string* hint;
};

/// Free variables in order of first occurrence.
std::vector<FreeVar> free_vars(const Expr& e);

/// True iff no VarId is bound twice in `e`.
bool has_unique_binders(const Expr& e);

/// Copy of `e` with every binder renamed to a fresh VarId.
Expr freshen(const Expr& e);

/// Simultaneous capture-free substitution of free variables. Each inserted
/// replacement gets fresh binders, so duplicated subterms keep binders unique.
Expr substitute(const Expr& e, const std::unordered_map<VarId, Expr>& replacements);
Expr substitute(const Expr& e, VarId var, const Expr& replacement);

/// Built solely from literals, closed under pair and cons.
bool is_constant(const Expr& e);

}  // namespace rwpe
