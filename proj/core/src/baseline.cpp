#include "rwpe/baseline.hpp"

#include <unordered_map>

#include "rwpe/term_ops.hpp"

namespace rwpe {
namespace {

const Expr& child(const Expr& e, int index) {
  switch (e->kind()) {
    case ExprKind::Abs: return e->body();
    case ExprKind::App: return index == 0 ? e->fn() : e->arg();
    case ExprKind::LetIn: return index == 0 ? e->rhs() : e->body();
    default: throw Error("path descends into a leaf");
  }
}

Expr with_child(const Expr& e, int index, Expr c) {
  switch (e->kind()) {
    case ExprKind::Abs: return mk_abs(e->var(), e->var_type(), std::move(c), e->hint_ptr());
    case ExprKind::App: return index == 0 ? mk_app(std::move(c), e->arg()) : mk_app(e->fn(), std::move(c));
    case ExprKind::LetIn:
      return index == 0 ? mk_let(e->var(), std::move(c), e->body(), e->hint_ptr())
                        : mk_let(e->var(), e->rhs(), std::move(c), e->hint_ptr());
    default: throw Error("path descends into a leaf");
  }
}

Expr replace_at(const Expr& e, const std::vector<int>& path, std::size_t depth, Expr replacement) {
  if (depth == path.size()) return replacement;
  return with_child(e, path[depth], replace_at(child(e, path[depth]), path, depth + 1, std::move(replacement)));
}

const Expr& at_path(const Expr& e, const std::vector<int>& path) {
  const Expr* cur = &e;
  for (int i : path) cur = &child(*cur, i);
  return *cur;
}

/// Tries user rules then schemas at the root of `e`.
class StepRules {
 public:
  StepRules(const std::vector<RewriteRule>& rules, const BaselineConfig& cfg) : rules_(rules), cfg_(cfg) {}

  std::optional<std::pair<Expr, std::string>> apply(const Expr& e) const {
    for (const auto& r : rules_) {
      if (auto out = apply_rule(r, e)) return std::make_pair(std::move(*out), r.name);
    }
    return apply_schema(e, nullptr);
  }

  std::optional<Expr> apply_named(const Expr& e, const std::string& name) const {
    for (const auto& r : rules_) {
      if (r.name == name) return apply_rule(r, e);
    }
    if (auto out = apply_schema(e, &name)) return std::move(out->first);
    return std::nullopt;
  }

 private:
  static std::optional<Expr> apply_rule(const RewriteRule& r, const Expr& e) {
    if (!e->type()->is_base()) return std::nullopt;
    auto b = match_pattern(r.lhs, e, r.num_vars());
    if (!b) return std::nullopt;
    auto inst = prepare_instantiation(r, *b);
    if (!inst) return std::nullopt;
    std::unordered_map<VarId, Expr> subst(inst->begin(), inst->end());
    return substitute(r.rhs, subst);
  }

  std::optional<std::pair<Expr, std::string>> apply_schema(const Expr& e, const std::string* only) const {
    auto want = [&](const char* name) { return !only || *only == name; };
    if (cfg_.beta && want("beta") && e->kind() == ExprKind::App && e->fn()->kind() == ExprKind::Abs) {
      const Expr& abs = e->fn();
      return std::make_pair(substitute(abs->body(), abs->var(), e->arg()), std::string("beta"));
    }
    if (cfg_.let_inline && want("let_inline") && e->kind() == ExprKind::LetIn &&
        (e->rhs()->kind() == ExprKind::Var || is_constant(e->rhs()))) {
      return std::make_pair(substitute(e->body(), e->var(), e->rhs()), std::string("let_inline"));
    }
    if (e->kind() != ExprKind::App || !is_full_ident_app(e)) return std::nullopt;
    Spine sp = app_spine(e);
    const Ident& id = sp.head->ident();
    if (cfg_.eliminators) {
      if (id.tag() == IdentTag::ListRect) {
        const Expr& l = sp.args[2];
        if (want("list_rect_nil") && l->kind() == ExprKind::Ident && l->ident().tag() == IdentTag::Nil) {
          return std::make_pair(sp.args[0], std::string("list_rect_nil"));
        }
        if (auto c = as_cons(l); c && want("list_rect_cons")) {
          Expr rec = mk_apps(mk_ident(id), {sp.args[0], sp.args[1], c->second});
          return std::make_pair(mk_apps(freshen(sp.args[1]), {c->first, c->second, rec}),
                                std::string("list_rect_cons"));
        }
      }
      if (id.tag() == IdentTag::NatRect) {
        if (const Int* k = as_int_lit(sp.args[2])) {
          if (*k <= 0 && want("nat_rect_zero")) return std::make_pair(sp.args[0], std::string("nat_rect_zero"));
          if (*k > 0 && want("nat_rect_succ")) {
            Expr prev = mk_int(*k - 1);
            Expr rec = mk_apps(mk_ident(id), {sp.args[0], sp.args[1], prev});
            return std::make_pair(mk_apps(freshen(sp.args[1]), {prev, rec}), std::string("nat_rect_succ"));
          }
        }
      }
    }
    if (cfg_.let_lift && want("let_lift")) {
      for (std::size_t i = 0; i < sp.args.size(); ++i) {
        if (id.tag() == IdentTag::Cons && i == 1) continue;
        const Expr& a = sp.args[i];
        if (a->kind() != ExprKind::LetIn) continue;
        std::vector<Expr> args = sp.args;
        args[i] = a->body();
        return std::make_pair(mk_let(a->var(), a->rhs(), mk_apps(mk_ident(id), args), a->hint_ptr()),
                              std::string("let_lift"));
      }
    }
    return std::nullopt;
  }

  const std::vector<RewriteRule>& rules_;
  const BaselineConfig& cfg_;
};

struct Found {
  std::vector<int> path;
  Expr replacement;
  std::string rule;
};

/// Search in the requested order; lambda bodies are not entered.
bool search(const Expr& e, Order order, const StepRules& step, std::vector<int>& path, Found& out) {
  auto here = [&]() {
    if (auto r = step.apply(e)) {
      out = {path, std::move(r->first), std::move(r->second)};
      return true;
    }
    return false;
  };
  if (order == Order::TopDown && here()) return true;
  const int n = e->kind() == ExprKind::App || e->kind() == ExprKind::LetIn ? 2 : 0;
  for (int i = 0; i < n; ++i) {
    path.push_back(i);
    const bool hit = search(child(e, i), order, step, path, out);
    path.pop_back();
    if (hit) return true;
  }
  return order == Order::BottomUp && here();
}

}  // namespace

std::optional<std::pair<Expr, TraceStep>> rewrite_once(const Expr& e, const std::vector<RewriteRule>& rules,
                                                       Order order, const BaselineConfig& cfg) {
  StepRules step(rules, cfg);
  std::vector<int> path;
  Found found;
  if (!search(e, order, step, path, found)) return std::nullopt;
  TraceStep t;
  t.rule = found.rule;
  t.path = found.path;
  t.goal_size = term_size(e);
  t.before_size = term_size(at_path(e, found.path));
  t.after_size = term_size(found.replacement);
  Expr next = replace_at(e, found.path, 0, std::move(found.replacement));
  return std::make_pair(std::move(next), std::move(t));
}

ExhaustiveResult rewrite_exhaustive(const Expr& e, const std::vector<RewriteRule>& rules, Order order,
                                    std::size_t max_steps, const BaselineConfig& cfg) {
  ExhaustiveResult r{e, {}};
  while (auto step = rewrite_once(r.expr, rules, order, cfg)) {
    if (r.trace.size() >= max_steps) throw StepBudgetExhausted(max_steps, std::move(r));
    r.expr = std::move(step->first);
    r.trace.push_back(std::move(step->second));
  }
  return r;
}

TraceCost trace_cost(const std::vector<TraceStep>& trace) {
  TraceCost c;
  c.steps = trace.size();
  for (const auto& s : trace) c.total_goal_size += s.goal_size;
  return c;
}

std::size_t count_steps(const std::vector<TraceStep>& trace, const std::string& rule) {
  std::size_t n = 0;
  for (const auto& s : trace) n += s.rule == rule ? 1 : 0;
  return n;
}

Expr replay(const Expr& e, const std::vector<TraceStep>& trace, const std::vector<RewriteRule>& rules,
            const BaselineConfig& cfg) {
  StepRules step(rules, cfg);
  Expr cur = e;
  for (const auto& s : trace) {
    auto out = step.apply_named(at_path(cur, s.path), s.rule);
    if (!out) throw Error("trace step " + s.rule + " does not apply");
    cur = replace_at(cur, s.path, 0, std::move(*out));
  }
  return cur;
}

}  // namespace rwpe
