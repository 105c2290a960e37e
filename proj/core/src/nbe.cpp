#include "rwpe/nbe.hpp"

#include <memory>
#include <variant>

#include "rwpe/errors.hpp"
#include "rwpe/term_ops.hpp"
#include "rwpe/typecheck.hpp"

namespace rwpe {

std::uint64_t RewriteStats::total_rule_applications() const {
  std::uint64_t n = 0;
  for (const auto& [_, c] : rule_applications) n += c;
  return n;
}

std::uint64_t RewriteStats::total_eliminator_steps() const {
  std::uint64_t n = 0;
  for (const auto& [_, c] : eliminator_steps) n += c;
  return n;
}

std::string RewriteStats::to_kv() const {
  std::string s;
  auto line = [&](const std::string& k, std::uint64_t v) { s += k + "=" + std::to_string(v) + "\n"; };
  line("rule_applications", total_rule_applications());
  for (const auto& [k, v] : rule_applications) line("rule." + k, v);
  line("eliminator_steps", total_eliminator_steps());
  for (const auto& [k, v] : eliminator_steps) line("eliminator." + k, v);
  line("nodes_visited", nodes_visited);
  line("lets_lifted", lets_lifted);
  line("lets_inlined", lets_inlined);
  return s;
}

RuleSet::RuleSet(std::vector<RewriteRule> rules) : rules_(std::move(rules)) {
  if (!rules_.empty()) tree_ = compile_rules(rules_);
}

namespace {

struct SemFn;
/// Semantic value: residual syntax at base types, a host function at arrows.
using Sem = std::variant<Expr, std::shared_ptr<const SemFn>>;

struct SemFn {
  std::function<Sem(const Sem&)> apply;
  const std::string* hint = nullptr;
};

struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;
struct EnvNode {
  VarId id;
  Sem value;
  Env next;
};

Env extend(Env env, VarId id, Sem value) {
  return std::make_shared<const EnvNode>(EnvNode{id, std::move(value), std::move(env)});
}

const Expr& as_expr(const Sem& v) { return std::get<Expr>(v); }

class Engine {
 public:
  Engine(const RuleSet& rules, const EngineConfig& cfg, RewriteStats& stats)
      : rules_(rules), cfg_(cfg), stats_(stats) {}

  Expr normalize(const Expr& e) {
    Sem v = reduce(e, nullptr);
    Expr out = reify(v, e->type());
    return wrap_lets(0, std::move(out));
  }

  /// Head rewriting of `e`, with lets produced by right-hand sides wrapped
  /// around the result. nullopt when nothing fired.
  std::optional<Expr> head_only(const Expr& e) {
    const std::uint64_t before = applications_;
    Expr out = as_expr(rewrite_head(e, 1));
    out = wrap_lets(0, std::move(out));
    if (applications_ == before) return std::nullopt;
    return out;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Engine& e) : engine(e) {
      if (++engine.depth_ > engine.cfg_.max_depth) {
        --engine.depth_;
        throw RecursionLimit("reduction nesting exceeded " + std::to_string(engine.cfg_.max_depth));
      }
    }
    ~DepthGuard() { --engine.depth_; }
    Engine& engine;
  };

  struct PendingLet {
    VarId id;
    Expr rhs;
    const std::string* hint;
  };

  void charge() {
    if (++used_ > cfg_.budget) {
      throw BudgetExhausted("rewrite budget of " + std::to_string(cfg_.budget) + " steps exhausted");
    }
  }

  void eliminator_step(const char* name) {
    charge();
    if (cfg_.collect_stats) ++stats_.eliminator_steps[name];
  }

  Sem lookup(const Expr& var, const Env& env) {
    for (const EnvNode* n = env.get(); n; n = n->next.get()) {
      if (n->id == var->var()) return n->value;
    }
    return reflect(var, var->type());
  }

  Expr emit_let(Expr rhs, const std::string* hint) {
    const VarId id = fresh_var_id();
    Type t = rhs->type();
    sink_.push_back({id, std::move(rhs), hint});
    if (cfg_.collect_stats) ++stats_.lets_lifted;
    return mk_var(id, t, hint);
  }

  Expr wrap_lets(std::size_t mark, Expr body) {
    for (std::size_t i = sink_.size(); i > mark; --i) {
      auto& l = sink_[i - 1];
      body = mk_let(l.id, std::move(l.rhs), std::move(body), l.hint);
    }
    sink_.resize(mark);
    return body;
  }

  /// Binds a let-bound base value according to the inlining heuristics.
  Sem bind_let_value(const Expr& r, const std::string* hint) {
    if ((cfg_.inline_constants && is_constant(r)) || (cfg_.inline_variables && r->kind() == ExprKind::Var)) {
      if (cfg_.collect_stats) ++stats_.lets_inlined;
      return r;
    }
    if (cfg_.name_cons_cells && (as_list_literal(r) || as_pair(r))) return name_components(r, hint);
    return emit_let(r, hint);
  }

  /// Keeps list and pair constructors visible and let-binds their
  /// non-trivial components.
  Expr name_components(const Expr& r, const std::string* hint) {
    if (r->kind() == ExprKind::Var || is_constant(r)) return r;
    if (auto elems = as_list_literal(r); elems && !elems->empty()) {
      for (auto& x : *elems) x = name_components(x, hint);
      return mk_list(r->type()->first, *elems);
    }
    if (auto p = as_pair(r)) return mk_pair(name_components(p->first, hint), name_components(p->second, hint));
    return emit_let(r, hint);
  }

  Sem reduce(const Expr& root, Env env) {
    DepthGuard guard(*this);
    const Expr* e = &root;
    while ((*e)->kind() == ExprKind::LetIn) {
      const ExprNode& let = **e;
      Sem v = reduce(let.rhs(), env);
      if (let.rhs()->type()->is_base()) v = bind_let_value(as_expr(v), let.hint_ptr());
      env = extend(std::move(env), let.var(), std::move(v));
      e = &let.body();
    }
    const Expr& x = *e;
    switch (x->kind()) {
      case ExprKind::Var: return lookup(x, env);
      case ExprKind::Ident: return reflect_ident(x->ident());
      case ExprKind::Abs: {
        Expr body = x->body();
        const VarId param = x->var();
        return std::make_shared<const SemFn>(SemFn{
            [this, body, param, env](const Sem& arg) { return reduce(body, extend(env, param, arg)); },
            x->hint_ptr()});
      }
      case ExprKind::App: {
        Sem f = reduce(x->fn(), env);
        Sem a = reduce(x->arg(), env);
        return apply(f, a);
      }
      case ExprKind::LetIn: break;
    }
    throw TypeError("unreachable expression kind");
  }

  Sem apply(const Sem& f, const Sem& a) {
    DepthGuard guard(*this);
    return std::get<std::shared_ptr<const SemFn>>(f)->apply(a);
  }

  Expr reify(const Sem& v, Type t) {
    if (t->is_base()) return as_expr(v);
    const auto& fn = std::get<std::shared_ptr<const SemFn>>(v);
    const std::size_t mark = sink_.size();
    const VarId x = fresh_var_id();
    const std::string* hint = fn->hint && !fn->hint->empty() ? fn->hint : intern_hint("x");
    Sem param = reflect(mk_var(x, t->domain(), hint), t->domain());
    Expr body = reify(apply(v, param), t->codomain());
    body = wrap_lets(mark, std::move(body));
    return mk_abs(x, t->domain(), std::move(body), hint);
  }

  Sem reflect(const Expr& e, Type t) {
    if (t->is_base()) {
      if (e->kind() == ExprKind::Var) return e;
      return rewrite_head(e, 1);
    }
    return std::make_shared<const SemFn>(SemFn{
        [this, e, t](const Sem& arg) { return reflect(mk_app(e, reify(arg, t->domain())), t->codomain()); },
        nullptr});
  }

  Sem reflect_ident(const Ident& id) {
    const std::size_t n = arity(id.type());
    if (n == 0) return rewrite_head(mk_ident(id), 1);
    return collector(id, n, {});
  }

  Sem collector(const Ident& id, std::size_t n, std::vector<Sem> args) {
    return std::make_shared<const SemFn>(SemFn{
        [this, id, n, args = std::move(args)](const Sem& a) {
          auto next = args;
          next.push_back(a);
          if (next.size() == n) return apply_ident(id, std::move(next), 1);
          return collector(id, n, std::move(next));
        },
        nullptr});
  }

  /// Full application of an identifier to semantic arguments.
  Sem apply_ident(const Ident& id, std::vector<Sem> args, std::size_t chain) {
    DepthGuard guard(*this);
    if (id.tag() == IdentTag::ListRect) {
      std::vector<std::pair<Expr, Expr>> cells;
      Expr tail = as_expr(args[2]);
      while (auto c = as_cons(tail)) {
        cells.push_back(*c);
        tail = c->second;
      }
      if (!cells.empty() || (tail->kind() == ExprKind::Ident && tail->ident().tag() == IdentTag::Nil)) {
        Sem acc;
        if (tail->kind() == ExprKind::Ident && tail->ident().tag() == IdentTag::Nil) {
          eliminator_step("list_rect_nil");
          acc = args[0];
        } else {
          acc = residual(id, {args[0], args[1], tail}, chain);
        }
        for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
          eliminator_step("list_rect_cons");
          acc = apply(apply(apply(args[1], it->first), it->second), acc);
        }
        return acc;
      }
    } else if (id.tag() == IdentTag::NatRect) {
      if (const Int* k = as_int_lit(as_expr(args[2]))) {
        eliminator_step("nat_rect_zero");
        Sem acc = args[0];
        for (Int i = 0; i < *k; ++i) {
          eliminator_step("nat_rect_succ");
          acc = apply(apply(args[1], mk_int(i)), acc);
        }
        return acc;
      }
    }
    return residual(id, args, chain);
  }

  Sem residual(const Ident& id, const std::vector<Sem>& args, std::size_t chain) {
    Expr e = mk_ident(id);
    Type t = id.type();
    for (const auto& a : args) {
      e = mk_app(std::move(e), reify(a, t->domain()));
      t = t->codomain();
    }
    return rewrite_head(e, chain);
  }

  Sem rewrite_head(const Expr& e, std::size_t chain) {
    if (cfg_.on_rewrite_head) cfg_.on_rewrite_head(e);
    if (cfg_.collect_stats) ++stats_.nodes_visited;
    if (rules_.empty()) return e;
    if (chain > cfg_.fuel) {
      throw FuelExhausted("more than " + std::to_string(cfg_.fuel) + " consecutive rewrites at one node");
    }
    std::optional<std::vector<std::pair<VarId, Expr>>> inst;
    const auto& rules = rules_.rules();
    auto picked = eval_decision_tree(rules_.tree(), e, [&](int k, const Bindings& b) {
      inst = prepare_instantiation(rules[static_cast<std::size_t>(k)], b);
      return inst.has_value();
    });
    if (!picked) return e;
    const RewriteRule& rule = rules[static_cast<std::size_t>(*picked)];
    charge();
    ++applications_;
    if (cfg_.collect_stats) ++stats_.rule_applications[rule.name];

    Env env;
    for (auto& [id, value] : *inst) {
      if (value->type()->is_base()) {
        env = extend(std::move(env), id, value);
      } else {
        env = extend(std::move(env), id, reduce(value, nullptr));
      }
    }
    const Expr& rhs = rule.rhs;
    if (rhs->type()->is_base() && is_full_ident_app(rhs)) {
      Spine sp = app_spine(rhs);
      std::vector<Sem> args;
      args.reserve(sp.args.size());
      for (const auto& a : sp.args) args.push_back(reduce(a, env));
      return apply_ident(sp.head->ident(), std::move(args), chain + 1);
    }
    return reduce(rhs, env);
  }

  const RuleSet& rules_;
  const EngineConfig& cfg_;
  RewriteStats& stats_;
  std::vector<PendingLet> sink_;
  std::uint64_t used_ = 0;
  std::uint64_t applications_ = 0;
  std::size_t depth_ = 0;
};

}  // namespace

std::optional<Expr> rewrite_head(const Expr& e, const RuleSet& rules, const EngineConfig& cfg, RewriteStats& stats) {
  if (!type_check(e)->is_base()) throw TypeError("rewrite_head expects a base-typed term");
  return with_big_stack([&] { return Engine(rules, cfg, stats).head_only(e); }, cfg.stack_bytes);
}

RewriteResult rewrite_top(const Expr& e, const RuleSet& rules, const EngineConfig& cfg) {
  type_check(e);
  return with_big_stack(
      [&] {
        RewriteResult r;
        r.expr = Engine(rules, cfg, r.stats).normalize(e);
        if (!has_unique_binders(r.expr)) r.expr = freshen(r.expr);
        return r;
      },
      cfg.stack_bytes);
}

}  // namespace rwpe
