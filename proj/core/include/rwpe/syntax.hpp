#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rwpe/expr.hpp"
#include "rwpe/term_ops.hpp"

namespace rwpe {

/// User-declared opaque symbols, resolved by name during parsing.
struct SymbolTable {
  std::map<std::string, Ident, std::less<>> opaques;

  void declare_opaque(const std::string& name, Type t) { opaques.insert_or_assign(name, Ident::opaque(name, t)); }
};

/// Free-variable scope for term parsing. Names not bound in the term, not
/// builtin and not opaque are looked up here; unknown names are added with
/// an inferred type (int if unconstrained) when `auto_declare` is set.
struct TermContext {
  std::map<std::string, Expr, std::less<>> free_vars;
  bool auto_declare = true;
  const SymbolTable* symbols = nullptr;
  /// Keeps `symbols` alive when the context owns its table.
  std::shared_ptr<const SymbolTable> owned_symbols;

  /// Declares (or returns the existing) free variable `name : t`.
  Expr declare(const std::string& name, Type t);
};

/// Parses a term. Syntax:
///   \x:T. e   let x = e in e   e e   e :: e   e >> e   e + e   e - e
///   e * e   e / e   (e, e)   [e; e]   []   ()   true   false   42   (-3)
///   clip[lo,hi](e)   comment "text" e   (e : T)
/// and the builtin names add sub mul div shr pow log2floor fst snd pair cons
/// nil awc64 map list_rect nat_rect. Throws ParseError.
Expr parse_term(std::string_view text, TermContext& ctx);
Expr parse_term(std::string_view text);

/// `int | bool | unit | list T | T * T | T -> T`.
Type parse_type(std::string_view text);

struct PrintOptions {
  /// Verbatim renderings for specific variables (used by the rule printer).
  std::unordered_map<VarId, std::string> fixed_names;
};

/// Prints a term in the syntax accepted by parse_term. Bound variables get
/// distinct names derived from their hints.
std::string print_term(const Expr& e, const PrintOptions& options = {});

/// The names print_term gives to the free variables of `e`.
std::vector<std::pair<std::string, FreeVar>> free_var_names(const Expr& e);

/// A context in which parsing print_term(e) yields a term alpha-equivalent
/// to `e`.
TermContext context_for(const Expr& e);

/// True for names that cannot be used as variables (keywords and builtins).
bool is_reserved_name(std::string_view name);

}  // namespace rwpe
