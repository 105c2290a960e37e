#pragma once

// Lexer, parser and type elaborator shared by the term and rule parsers.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rwpe/errors.hpp"
#include "rwpe/expr.hpp"
#include "rwpe/pattern.hpp"
#include "rwpe/rule.hpp"
#include "rwpe/side_condition.hpp"
#include "rwpe/syntax.hpp"

namespace rwpe::detail {

enum class TokKind { Name, Int, String, Sym, End };

struct Token {
  TokKind kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::vector<Token> tokenize(std::string_view text);

struct Pos {
  std::size_t line = 1;
  std::size_t col = 1;
};

/// Clip bound as written: a literal or a name.
struct ClipArg {
  bool is_name = false;
  std::string name;
  Int value;
  Pos pos;
};

struct RawNode;
using Raw = std::shared_ptr<const RawNode>;

struct RawNode {
  enum class Kind { Name, Int, Lam, Let, App, Infix, List, Tuple, Unit, Bool, Ascribe, Clip, Comment, Computed };
  Kind kind;
  Pos pos;
  std::string text;  // Name, binder name, Infix operator, Comment text
  Int value;         // Int, Bool (0/1)
  Type type = nullptr;  // Lam parameter, Ascribe target
  std::vector<Raw> children;
  ClipArg lo;
  ClipArg hi;
  CondExpr cond;  // Computed
};

/// Resolves a condition variable name to a pattern variable index.
using CondResolver = std::function<int(const std::string&, Pos)>;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Raw term();
  Type type();
  CondExpr cond(const CondResolver& resolve);

  const Token& peek(std::size_t ahead = 0) const;
  bool at_sym(std::string_view s, std::size_t ahead = 0) const;
  bool at_name(std::string_view s, std::size_t ahead = 0) const;
  bool at_end() const { return peek().kind == TokKind::End; }
  Token next();
  void expect_sym(std::string_view s);
  void expect_name(std::string_view s);
  std::string name();
  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] static void fail_at(Pos p, const std::string& message);

  /// Enables `'(cond)` computed values, resolving names with `resolve`.
  void allow_computed(CondResolver resolve) { computed_resolver_ = std::move(resolve); }

 private:
  Raw cons_level();
  Raw binary_level(int level);
  Raw app_level();
  Raw atom();
  bool starts_atom() const;
  ClipArg clip_arg();
  Type arrow_type_level();
  Type pair_type_level();
  Type list_type_level();
  CondExpr cond_or(const CondResolver&);
  CondExpr cond_and(const CondResolver&);
  CondExpr cond_not(const CondResolver&);
  CondExpr cond_cmp(const CondResolver&);
  CondExpr cond_sum(const CondResolver&);
  CondExpr cond_prod(const CondResolver&);
  CondExpr cond_pow(const CondResolver&);
  CondExpr cond_unary(const CondResolver&);
  Pos pos() const { return {peek().line, peek().col}; }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  CondResolver computed_resolver_;
};

/// How names and clip bounds are interpreted during elaboration.
enum class ElabMode { Term, Lhs, Rhs };

struct LhsResult {
  Pattern pattern;
};

/// Elaborates raw syntax into typed terms or patterns.
class Elaborator {
 public:
  Elaborator(TermContext& ctx, ElabMode mode, std::vector<PatternVar>* pattern_vars = nullptr);
  ~Elaborator();

  Expr to_expr(const Raw& raw);
  Pattern to_pattern(const Raw& raw);
  /// Computed values created while elaborating a right-hand side.
  std::vector<ComputedVar>& computed();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rwpe::detail
