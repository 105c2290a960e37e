#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rwpe/ident.hpp"
#include "rwpe/type.hpp"

namespace rwpe {

/// Globally unique variable identity. Names are only printing hints.
using VarId = std::uint64_t;

/// Issues a fresh VarId; thread-safe.
VarId fresh_var_id();

/// Interns a name hint so expression nodes can store it as a pointer.
const std::string* intern_hint(std::string_view hint);

enum class ExprKind { Var, Abs, App, LetIn, Ident };

class ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

/// Immutable term node. The node's type is computed at construction from its
/// children; `type()` is null for ill-typed nodes (see type_check for a
/// located diagnostic).
class ExprNode {
 public:
  ExprKind kind() const noexcept { return kind_; }
  Type type() const noexcept { return type_; }
  bool well_typed() const noexcept { return type_ != nullptr; }

  /// Var: the variable. Abs: the parameter. LetIn: the bound variable.
  VarId var() const noexcept { return var_; }
  /// Var: its type. Abs: the parameter type. LetIn: the rhs type.
  Type var_type() const noexcept { return var_type_; }
  const std::string& hint() const noexcept { return *hint_; }
  const std::string* hint_ptr() const noexcept { return hint_; }

  const Expr& body() const noexcept { return kind_ == ExprKind::Abs ? a_ : b_; }  // Abs, LetIn
  const Expr& fn() const noexcept { return a_; }                                 // App
  const Expr& arg() const noexcept { return b_; }                                // App
  const Expr& rhs() const noexcept { return a_; }                                // LetIn
  const rwpe::Ident& ident() const noexcept { return *ident_; }                  // Ident

  ~ExprNode();

 private:
  friend Expr mk_var(VarId, Type, std::string_view);
  friend Expr mk_var(VarId, Type, const std::string*);
  friend Expr mk_abs(VarId, Type, Expr, const std::string*);
  friend Expr mk_app(Expr, Expr);
  friend Expr mk_let(VarId, Expr, Expr, const std::string*);
  friend Expr mk_ident(rwpe::Ident);
  struct Key {};

 public:
  ExprNode(Key, ExprKind kind, Type type) : kind_(kind), type_(type) {}

 private:
  ExprKind kind_;
  Type type_;
  VarId var_ = 0;
  Type var_type_ = nullptr;
  const std::string* hint_ = intern_hint("");
  Expr a_;
  Expr b_;
  std::optional<rwpe::Ident> ident_;
};

Expr mk_var(VarId id, Type type, std::string_view hint = {});
Expr mk_var(VarId id, Type type, const std::string* hint);
Expr mk_abs(VarId param, Type param_type, Expr body, const std::string* hint = nullptr);
Expr mk_app(Expr fn, Expr arg);
Expr mk_let(VarId bound, Expr rhs, Expr body, const std::string* hint = nullptr);
Expr mk_ident(Ident id);

Expr mk_apps(Expr fn, const std::vector<Expr>& args);
Expr mk_int(const Int& value);
Expr mk_bool(bool value);
/// Applies a binary primitive (Add, Sub, Mul, Div, Shr, Pow).
Expr mk_binop(IdentTag tag, Expr lhs, Expr rhs);
Expr mk_add(Expr lhs, Expr rhs);
Expr mk_pair(Expr first, Expr second);
Expr mk_cons(Expr head, Expr tail);
/// `[e0; e1; ...]` with the given element type.
Expr mk_list(Type elem, const std::vector<Expr>& elems);
Expr mk_clip(const Int& lo, const Int& hi, Expr arg);

/// Abs and LetIn variants that allocate a fresh binder and pass its Var to `body`.
template <class F>
Expr mk_lambda(Type param_type, std::string_view hint, F&& body) {
  const VarId id = fresh_var_id();
  const std::string* h = intern_hint(hint);
  return mk_abs(id, param_type, body(mk_var(id, param_type, h)), h);
}

template <class F>
Expr mk_let_fresh(Expr rhs, std::string_view hint, F&& body) {
  const VarId id = fresh_var_id();
  const std::string* h = intern_hint(hint);
  Type t = rhs->type();
  return mk_let(id, std::move(rhs), body(mk_var(id, t, h)), h);
}

/// Head and arguments of an application spine `head a0 a1 ...`.
struct Spine {
  const ExprNode* head;
  std::vector<Expr> args;
};
Spine app_spine(const Expr& e);

/// True when `e` is an identifier applied to exactly its arity of arguments.
bool is_full_ident_app(const Expr& e);

/// Matches `cons h t`; returns {h, t}.
std::optional<std::pair<Expr, Expr>> as_cons(const Expr& e);
/// Matches a cons chain ending in nil; returns the elements.
std::optional<std::vector<Expr>> as_list_literal(const Expr& e);
/// Matches `pair a b`.
std::optional<std::pair<Expr, Expr>> as_pair(const Expr& e);
/// Matches an integer literal.
const Int* as_int_lit(const Expr& e);

}  // namespace rwpe
