#include "rwpe/term_ops.hpp"

#include <algorithm>
#include <unordered_set>

namespace rwpe {
namespace {

void stats_rec(const Expr& root, std::size_t depth, TermStats& s) {
  const Expr* e = &root;
  // Let chains iteratively.
  while ((*e)->kind() == ExprKind::LetIn) {
    ++s.node_count;
    ++s.let_count;
    ++depth;
    s.max_binder_depth = std::max(s.max_binder_depth, depth);
    stats_rec((*e)->rhs(), depth - 1, s);
    e = &(*e)->body();
  }
  switch ((*e)->kind()) {
    case ExprKind::Var:
    case ExprKind::Ident:
      ++s.node_count;
      return;
    case ExprKind::Abs:
      ++s.node_count;
      s.max_binder_depth = std::max(s.max_binder_depth, depth + 1);
      stats_rec((*e)->body(), depth + 1, s);
      return;
    case ExprKind::App: {
      Spine sp = app_spine(*e);
      if (sp.head->kind() == ExprKind::Ident) {
        ++s.node_count;
      } else {
        s.node_count += sp.args.size();
        Expr head = *e;
        while (head->kind() == ExprKind::App) head = head->fn();
        stats_rec(head, depth, s);
      }
      for (const auto& a : sp.args) stats_rec(a, depth, s);
      return;
    }
    case ExprKind::LetIn:
      return;
  }
}

class AlphaEq {
 public:
  bool eq(const Expr& a, const Expr& b) {
    if (a.get() == b.get() && left_.empty()) return true;
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
      case ExprKind::Var: {
        auto la = left_.find(a->var());
        auto rb = right_.find(b->var());
        if (la == left_.end() && rb == right_.end()) return a->var() == b->var();
        if (la == left_.end() || rb == right_.end()) return false;
        return la->second.back() == b->var() && rb->second.back() == a->var();
      }
      case ExprKind::Ident:
        return a->ident() == b->ident();
      case ExprKind::App:
        return eq(a->fn(), b->fn()) && eq(a->arg(), b->arg());
      case ExprKind::Abs: {
        if (a->var_type() != b->var_type()) return false;
        bind(a->var(), b->var());
        bool r = eq(a->body(), b->body());
        unbind(a->var(), b->var());
        return r;
      }
      case ExprKind::LetIn: {
        std::vector<std::pair<VarId, VarId>> bound;
        const Expr* x = &a;
        const Expr* y = &b;
        bool r = true;
        while ((*x)->kind() == ExprKind::LetIn && (*y)->kind() == ExprKind::LetIn) {
          if (!eq((*x)->rhs(), (*y)->rhs())) {
            r = false;
            break;
          }
          bind((*x)->var(), (*y)->var());
          bound.emplace_back((*x)->var(), (*y)->var());
          x = &(*x)->body();
          y = &(*y)->body();
        }
        if (r) r = eq(*x, *y);
        for (auto it = bound.rbegin(); it != bound.rend(); ++it) unbind(it->first, it->second);
        return r;
      }
    }
    return false;
  }

 private:
  void bind(VarId a, VarId b) {
    left_[a].push_back(b);
    right_[b].push_back(a);
  }
  void unbind(VarId a, VarId b) {
    if (auto& v = left_[a]; v.pop_back(), v.empty()) left_.erase(a);
    if (auto& v = right_[b]; v.pop_back(), v.empty()) right_.erase(b);
  }

  std::unordered_map<VarId, std::vector<VarId>> left_;
  std::unordered_map<VarId, std::vector<VarId>> right_;
};

class FreeVarCollector {
 public:
  void visit(const Expr& e) {
    switch (e->kind()) {
      case ExprKind::Var:
        if (!bound_.count(e->var()) && seen_.insert(e->var()).second) {
          out.push_back({e->var(), e->var_type(), e->hint_ptr()});
        }
        return;
      case ExprKind::Ident:
        return;
      case ExprKind::App:
        visit(e->fn());
        visit(e->arg());
        return;
      case ExprKind::Abs: {
        const bool fresh = bound_.insert(e->var()).second;
        visit(e->body());
        if (fresh) bound_.erase(e->var());
        return;
      }
      case ExprKind::LetIn: {
        std::vector<VarId> added;
        const Expr* x = &e;
        while ((*x)->kind() == ExprKind::LetIn) {
          visit((*x)->rhs());
          if (bound_.insert((*x)->var()).second) added.push_back((*x)->var());
          x = &(*x)->body();
        }
        visit(*x);
        for (VarId v : added) bound_.erase(v);
        return;
      }
    }
  }

  std::vector<FreeVar> out;

 private:
  std::unordered_set<VarId> bound_;
  std::unordered_set<VarId> seen_;
};

/// Rebuilds `e`, renaming every binder and replacing free variables.
class Renamer {
 public:
  explicit Renamer(const std::unordered_map<VarId, Expr>* replacements) : replacements_(replacements) {}

  Expr run(const Expr& e) {
    switch (e->kind()) {
      case ExprKind::Var: {
        if (auto it = renamed_.find(e->var()); it != renamed_.end() && !it->second.empty()) {
          return mk_var(it->second.back(), e->var_type(), e->hint_ptr());
        }
        if (replacements_) {
          if (auto it = replacements_->find(e->var()); it != replacements_->end()) {
            return Renamer(nullptr).run(it->second);
          }
        }
        return e;
      }
      case ExprKind::Ident:
        return e;
      case ExprKind::App: {
        Expr f = run(e->fn());
        Expr a = run(e->arg());
        if (f == e->fn() && a == e->arg()) return e;
        return mk_app(std::move(f), std::move(a));
      }
      case ExprKind::Abs: {
        const VarId fresh = fresh_var_id();
        renamed_[e->var()].push_back(fresh);
        Expr body = run(e->body());
        renamed_[e->var()].pop_back();
        return mk_abs(fresh, e->var_type(), std::move(body), e->hint_ptr());
      }
      case ExprKind::LetIn: {
        struct Frame {
          VarId old_id;
          VarId new_id;
          Expr rhs;
          const std::string* hint;
        };
        std::vector<Frame> frames;
        const Expr* x = &e;
        while ((*x)->kind() == ExprKind::LetIn) {
          Expr rhs = run((*x)->rhs());
          const VarId fresh = fresh_var_id();
          renamed_[(*x)->var()].push_back(fresh);
          frames.push_back({(*x)->var(), fresh, std::move(rhs), (*x)->hint_ptr()});
          x = &(*x)->body();
        }
        Expr out = run(*x);
        for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
          renamed_[it->old_id].pop_back();
          out = mk_let(it->new_id, std::move(it->rhs), std::move(out), it->hint);
        }
        return out;
      }
    }
    return e;
  }

 private:
  const std::unordered_map<VarId, Expr>* replacements_;
  std::unordered_map<VarId, std::vector<VarId>> renamed_;
};

bool unique_rec(const Expr& e, std::unordered_set<VarId>& seen) {
  const Expr* x = &e;
  while ((*x)->kind() == ExprKind::LetIn) {
    if (!seen.insert((*x)->var()).second) return false;
    if (!unique_rec((*x)->rhs(), seen)) return false;
    x = &(*x)->body();
  }
  switch ((*x)->kind()) {
    case ExprKind::Abs:
      return seen.insert((*x)->var()).second && unique_rec((*x)->body(), seen);
    case ExprKind::App:
      return unique_rec((*x)->fn(), seen) && unique_rec((*x)->arg(), seen);
    default:
      return true;
  }
}

}  // namespace

TermStats term_stats(const Expr& e) {
  TermStats s;
  stats_rec(e, 0, s);
  return s;
}

std::size_t term_size(const Expr& root) {
  std::size_t n = 0;
  std::vector<const ExprNode*> stack{root.get()};
  while (!stack.empty()) {
    const ExprNode* e = stack.back();
    stack.pop_back();
    ++n;
    switch (e->kind()) {
      case ExprKind::Abs: stack.push_back(e->body().get()); break;
      case ExprKind::App:
        stack.push_back(e->fn().get());
        stack.push_back(e->arg().get());
        break;
      case ExprKind::LetIn:
        stack.push_back(e->rhs().get());
        stack.push_back(e->body().get());
        break;
      default: break;
    }
  }
  return n;
}

bool alpha_eq(const Expr& a, const Expr& b) { return AlphaEq().eq(a, b); }

std::vector<FreeVar> free_vars(const Expr& e) {
  FreeVarCollector c;
  c.visit(e);
  return std::move(c.out);
}

bool has_unique_binders(const Expr& e) {
  std::unordered_set<VarId> seen;
  return unique_rec(e, seen);
}

Expr freshen(const Expr& e) { return Renamer(nullptr).run(e); }

Expr substitute(const Expr& e, const std::unordered_map<VarId, Expr>& replacements) {
  return Renamer(&replacements).run(e);
}

Expr substitute(const Expr& e, VarId var, const Expr& replacement) {
  std::unordered_map<VarId, Expr> m{{var, replacement}};
  return substitute(e, m);
}

bool is_constant(const Expr& e) {
  if (e->kind() == ExprKind::Ident) return e->ident().is_literal();
  if (auto p = as_pair(e)) return is_constant(p->first) && is_constant(p->second);
  if (auto c = as_cons(e)) return is_constant(c->first) && is_constant(c->second);
  return false;
}

}  // namespace rwpe
