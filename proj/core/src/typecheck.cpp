#include "rwpe/typecheck.hpp"

#include <string>
#include <vector>

#include "rwpe/errors.hpp"

namespace rwpe {
namespace {

class Checker {
 public:
  Checker(const TypeEnv& env, bool allow_free) : outer_(env), allow_free_(allow_free) {}

  Type check(const Expr& root) {
    // Let chains are walked iteratively; other nodes recurse.
    const Expr* e = &root;
    std::vector<VarId> bound;
    while ((*e)->kind() == ExprKind::LetIn) {
      push("let.rhs");
      Type rt = check((*e)->rhs());
      pop();
      scope_[(*e)->var()].push_back(rt);
      bound.push_back((*e)->var());
      path_.push_back("let.body");
      e = &(*e)->body();
    }
    Type t = check_node_self(*e);
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
      scope_[*it].pop_back();
      path_.pop_back();
    }
    return t;
  }

 private:
  Type check_node_self(const Expr& e) {
    switch (e->kind()) {
      case ExprKind::Var: {
        auto it = scope_.find(e->var());
        Type declared = nullptr;
        if (it != scope_.end() && !it->second.empty()) {
          declared = it->second.back();
        } else if (auto o = outer_.find(e->var()); o != outer_.end()) {
          declared = o->second;
        } else if (allow_free_) {
          declared = e->var_type();
        } else {
          fail("UnboundVariable: " + hint_of(*e));
        }
        if (declared != e->var_type()) {
          fail("TypeMismatch: variable " + hint_of(*e) + " annotated " + to_string(e->var_type()) +
               " but bound at " + to_string(declared));
        }
        return declared;
      }
      case ExprKind::Abs: {
        scope_[e->var()].push_back(e->var_type());
        push("abs.body");
        Type bt = check(e->body());
        pop();
        scope_[e->var()].pop_back();
        return arrow_type(e->var_type(), bt);
      }
      case ExprKind::App: {
        push("app.fn");
        Type ft = check(e->fn());
        pop();
        push("app.arg");
        Type at = check(e->arg());
        pop();
        if (!ft->is_arrow()) fail("TypeMismatch: applying a value of type " + to_string(ft));
        if (ft->domain() != at) {
          fail("TypeMismatch: expected argument of type " + to_string(ft->domain()) + ", got " +
               to_string(at));
        }
        return ft->codomain();
      }
      case ExprKind::LetIn:
        return check(e);
      case ExprKind::Ident:
        return e->ident().type();
    }
    fail("unknown node");
  }

  static std::string hint_of(const ExprNode& e) {
    return e.hint().empty() ? "v" + std::to_string(e.var()) : e.hint();
  }

  void push(const char* step) { path_.push_back(step); }
  void pop() { path_.pop_back(); }

  [[noreturn]] void fail(const std::string& message) {
    std::string p;
    for (const auto& s : path_) {
      if (!p.empty()) p += '/';
      p += s;
    }
    throw TypeError(message, p.empty() ? "root" : p);
  }

  const TypeEnv& outer_;
  bool allow_free_;
  std::unordered_map<VarId, std::vector<Type>> scope_;
  std::vector<std::string> path_;
};

}  // namespace

Type type_check(const Expr& e, const TypeEnv& env, bool allow_free) {
  return Checker(env, allow_free).check(e);
}

Type type_check(const Expr& e) { return type_check(e, {}, true); }

}  // namespace rwpe
