#include "rwpe/expr.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <unordered_set>

namespace rwpe {

VarId fresh_var_id() {
  static std::atomic<VarId> next{1};
  return next.fetch_add(1, std::memory_order_relaxed);
}

const std::string* intern_hint(std::string_view hint) {
  static std::mutex mutex;
  static std::unordered_set<std::string> table;
  std::lock_guard lock(mutex);
  return &*table.emplace(hint).first;
}

ExprNode::~ExprNode() {
  // Long let chains and lists would otherwise be destroyed recursively.
  std::vector<Expr> pending;
  auto take = [&](Expr& child) {
    if (child && child.use_count() == 1) pending.push_back(std::move(child));
  };
  take(a_);
  take(b_);
  while (!pending.empty()) {
    Expr e = std::move(pending.back());
    pending.pop_back();
    auto* node = const_cast<ExprNode*>(e.get());
    if (e.use_count() == 1) {
      take(node->a_);
      take(node->b_);
    }
  }
}

Expr mk_var(VarId id, Type type, std::string_view hint) { return mk_var(id, type, intern_hint(hint)); }

Expr mk_var(VarId id, Type type, const std::string* hint) {
  auto n = std::make_shared<ExprNode>(ExprNode::Key{}, ExprKind::Var, type);
  n->var_ = id;
  n->var_type_ = type;
  if (hint) n->hint_ = hint;
  return n;
}

Expr mk_abs(VarId param, Type param_type, Expr body, const std::string* hint) {
  Type t = body->type() ? arrow_type(param_type, body->type()) : nullptr;
  auto n = std::make_shared<ExprNode>(ExprNode::Key{}, ExprKind::Abs, t);
  n->var_ = param;
  n->var_type_ = param_type;
  if (hint) n->hint_ = hint;
  n->a_ = std::move(body);
  return n;
}

Expr mk_app(Expr fn, Expr arg) {
  Type t = nullptr;
  Type ft = fn->type();
  if (ft && arg->type() && ft->is_arrow() && ft->domain() == arg->type()) t = ft->codomain();
  auto n = std::make_shared<ExprNode>(ExprNode::Key{}, ExprKind::App, t);
  n->a_ = std::move(fn);
  n->b_ = std::move(arg);
  return n;
}

Expr mk_let(VarId bound, Expr rhs, Expr body, const std::string* hint) {
  Type t = rhs->type() ? body->type() : nullptr;
  auto n = std::make_shared<ExprNode>(ExprNode::Key{}, ExprKind::LetIn, t);
  n->var_ = bound;
  n->var_type_ = rhs->type();
  if (hint) n->hint_ = hint;
  n->a_ = std::move(rhs);
  n->b_ = std::move(body);
  return n;
}

Expr mk_ident(Ident id) {
  auto n = std::make_shared<ExprNode>(ExprNode::Key{}, ExprKind::Ident, id.type());
  n->ident_ = std::move(id);
  return n;
}

Expr mk_apps(Expr fn, const std::vector<Expr>& args) {
  for (const auto& a : args) fn = mk_app(std::move(fn), a);
  return fn;
}

Expr mk_int(const Int& value) { return mk_ident(Ident::int_lit(value)); }
Expr mk_bool(bool value) { return mk_ident(Ident::bool_lit(value)); }

Expr mk_binop(IdentTag tag, Expr lhs, Expr rhs) {
  return mk_app(mk_app(mk_ident(Ident::prim(tag)), std::move(lhs)), std::move(rhs));
}

Expr mk_add(Expr lhs, Expr rhs) { return mk_binop(IdentTag::Add, std::move(lhs), std::move(rhs)); }

Expr mk_pair(Expr first, Expr second) {
  Ident p = Ident::pair(first->type(), second->type());
  return mk_app(mk_app(mk_ident(std::move(p)), std::move(first)), std::move(second));
}

Expr mk_cons(Expr head, Expr tail) {
  Ident c = Ident::cons(head->type());
  return mk_app(mk_app(mk_ident(std::move(c)), std::move(head)), std::move(tail));
}

Expr mk_list(Type elem, const std::vector<Expr>& elems) {
  Expr out = mk_ident(Ident::nil(elem));
  const Expr cons = mk_ident(Ident::cons(elem));
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) out = mk_app(mk_app(cons, *it), out);
  return out;
}

Expr mk_clip(const Int& lo, const Int& hi, Expr arg) {
  return mk_app(mk_ident(Ident::clip(lo, hi)), std::move(arg));
}

Spine app_spine(const Expr& e) {
  Spine s{e.get(), {}};
  while (s.head->kind() == ExprKind::App) {
    s.args.push_back(s.head->arg());
    s.head = s.head->fn().get();
  }
  std::reverse(s.args.begin(), s.args.end());
  return s;
}

bool is_full_ident_app(const Expr& e) {
  std::size_t n = 0;
  const ExprNode* h = e.get();
  while (h->kind() == ExprKind::App) {
    h = h->fn().get();
    ++n;
  }
  return h->kind() == ExprKind::Ident && n > 0 && n == arity(h->ident().type());
}

namespace {

const ExprNode* binary_head(const Expr& e, IdentTag tag) {
  if (e->kind() != ExprKind::App || e->fn()->kind() != ExprKind::App) return nullptr;
  const Expr& h = e->fn()->fn();
  if (h->kind() != ExprKind::Ident || h->ident().tag() != tag) return nullptr;
  return e.get();
}

}  // namespace

std::optional<std::pair<Expr, Expr>> as_cons(const Expr& e) {
  if (!binary_head(e, IdentTag::Cons)) return std::nullopt;
  return std::make_pair(e->fn()->arg(), e->arg());
}

std::optional<std::vector<Expr>> as_list_literal(const Expr& e) {
  std::vector<Expr> out;
  const Expr* cur = &e;
  while (true) {
    if ((*cur)->kind() == ExprKind::Ident && (*cur)->ident().tag() == IdentTag::Nil) return out;
    if (!binary_head(*cur, IdentTag::Cons)) return std::nullopt;
    out.push_back((*cur)->fn()->arg());
    cur = &(*cur)->arg();
  }
}

std::optional<std::pair<Expr, Expr>> as_pair(const Expr& e) {
  if (!binary_head(e, IdentTag::PairMk)) return std::nullopt;
  return std::make_pair(e->fn()->arg(), e->arg());
}

const Int* as_int_lit(const Expr& e) {
  if (e->kind() != ExprKind::Ident || e->ident().tag() != IdentTag::IntLit) return nullptr;
  return &e->ident().int_value();
}

}  // namespace rwpe
