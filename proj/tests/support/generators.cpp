#include "generators.hpp"

#include "rwpe/term_ops.hpp"

namespace rwpe::testing {

namespace {

Type int_int() { return arrow_type(int_type(), int_type()); }
Type int_pair() { return pair_type(int_type(), int_type()); }
Type int_list() { return list_type(int_type()); }

}  // namespace

TermGen::TermGen(std::uint64_t seed, TermGenOptions options) : rng_(seed), options_(options) {
  for (int i = 0; i < options_.int_vars; ++i) {
    free_.push_back(mk_var(fresh_var_id(), int_type(), "x" + std::to_string(i)));
  }
  if (options_.function_var) free_.push_back(mk_var(fresh_var_id(), int_int(), "f"));
  if (options_.list_var) free_.push_back(mk_var(fresh_var_id(), int_list(), "l"));
  scope_ = free_;
}

int TermGen::pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

bool TermGen::chance(int percent) { return pick(100) < percent; }

Type TermGen::random_type(bool allow_arrow) {
  switch (pick(allow_arrow ? 8 : 6)) {
    case 0:
    case 1:
    case 2: return int_type();
    case 3: return bool_type();
    case 4: return int_list();
    case 5: return int_pair();
    case 6: return int_int();
    default: return arrow_type(int_type(), int_int());
  }
}

Expr TermGen::literal(Type t) {
  switch (t->kind) {
    case TypeKind::Int: {
      static const int kLits[] = {0, 0, 1, 1, 2, 3, 4, 7, 8, -1, -5, 100};
      return mk_int(kLits[pick(static_cast<int>(std::size(kLits)))]);
    }
    case TypeKind::Bool: return mk_bool(chance(50));
    case TypeKind::Unit: return mk_ident(Ident::unit());
    case TypeKind::List: {
      std::vector<Expr> elems;
      const int n = pick(3);
      for (int i = 0; i < n; ++i) elems.push_back(literal(t->first));
      return mk_list(t->first, elems);
    }
    case TypeKind::Pair: return mk_pair(literal(t->first), literal(t->second));
    case TypeKind::Arrow: return with_binder(t->domain(), "a", 0, t->codomain());
  }
  return nullptr;
}

Expr TermGen::var_of(Type t) {
  std::vector<Expr> candidates;
  for (const auto& v : scope_) {
    if (v->type() == t) candidates.push_back(v);
  }
  if (candidates.empty()) return nullptr;
  return candidates[static_cast<std::size_t>(pick(static_cast<int>(candidates.size())))];
}

Expr TermGen::with_binder(Type t, const char* hint, int depth, Type body_type) {
  const VarId id = fresh_var_id();
  const Expr v = mk_var(id, t, hint);
  scope_.push_back(v);
  Expr body = gen(body_type, depth);
  scope_.pop_back();
  return mk_abs(id, t, body, intern_hint(hint));
}

Expr TermGen::gen_let(Type t, int depth) {
  const Type bt = random_type(chance(20));
  Expr rhs = gen(bt, depth - 1);
  const VarId id = fresh_var_id();
  scope_.push_back(mk_var(id, bt, "y"));
  Expr body = gen(t, depth - 1);
  scope_.pop_back();
  return mk_let(id, rhs, body, intern_hint("y"));
}

Expr TermGen::gen_beta(Type t, int depth) {
  const Type at = random_type(false);
  Expr fn = with_binder(at, "b", depth - 1, t);
  return mk_app(fn, gen(at, depth - 1));
}

Expr TermGen::gen_int(int depth) {
  auto sub = [&] { return gen(int_type(), depth - 1); };
  switch (pick(18)) {
    case 0:
    case 1: return mk_binop(IdentTag::Add, sub(), sub());
    case 2: return mk_binop(IdentTag::Sub, sub(), sub());
    case 3: return mk_binop(IdentTag::Mul, sub(), sub());
    case 4: {
      static const int kDivisors[] = {1, 2, 3, 4, 6, 8, -2};
      return mk_binop(IdentTag::Div, sub(), mk_int(kDivisors[pick(static_cast<int>(std::size(kDivisors)))]));
    }
    case 5: return mk_binop(IdentTag::Shr, sub(), mk_int(pick(4)));
    case 6: return mk_binop(IdentTag::Pow, sub(), mk_int(pick(3)));
    case 7: return mk_app(mk_ident(Ident::prim(IdentTag::Log2Floor)), sub());
    case 8: return mk_app(mk_ident(Ident::fst(int_type(), int_type())), gen(int_pair(), depth - 1));
    case 9: {
      Expr p = mk_apps(mk_ident(Ident::prim(IdentTag::AddWithCarry64)), {sub(), sub()});
      return mk_app(mk_ident(chance(50) ? Ident::fst(int_type(), int_type()) : Ident::snd(int_type(), int_type())),
                    p);
    }
    case 10: return gen_let(int_type(), depth);
    case 11: return gen_beta(int_type(), depth);
    case 12: {
      Expr fn = gen(int_int(), depth - 1);
      return mk_app(fn, sub());
    }
    case 13: {
      // Sum of a list.
      const Ident lr = Ident::list_rect(int_type(), int_type());
      const VarId h = fresh_var_id();
      const VarId tl = fresh_var_id();
      const VarId r = fresh_var_id();
      scope_.push_back(mk_var(h, int_type(), "h"));
      scope_.push_back(mk_var(r, int_type(), "r"));
      Expr body = chance(50) ? mk_add(mk_var(h, int_type(), "h"), mk_var(r, int_type(), "r")) : sub();
      scope_.pop_back();
      scope_.pop_back();
      Expr step = mk_abs(h, int_type(),
                         mk_abs(tl, int_list(), mk_abs(r, int_type(), body, intern_hint("r")), intern_hint("t")),
                         intern_hint("h"));
      return mk_apps(mk_ident(lr), {sub(), step, gen(int_list(), depth - 1)});
    }
    case 14: {
      const Ident nr = Ident::nat_rect(int_type());
      const VarId k = fresh_var_id();
      const VarId acc = fresh_var_id();
      scope_.push_back(mk_var(k, int_type(), "k"));
      scope_.push_back(mk_var(acc, int_type(), "acc"));
      Expr body = chance(60) ? mk_add(mk_var(acc, int_type(), "acc"), sub()) : sub();
      scope_.pop_back();
      scope_.pop_back();
      Expr step = mk_abs(k, int_type(), mk_abs(acc, int_type(), body, intern_hint("acc")), intern_hint("k"));
      return mk_apps(mk_ident(nr), {sub(), step, mk_int(pick(4))});
    }
    case 15: return mk_app(mk_ident(Ident::comment("note", int_type())), sub());
    case 16: return mk_clip(-5, 100, sub());
    default: return mk_binop(IdentTag::Add, sub(), mk_int(0));
  }
}

Expr TermGen::gen_bool(int depth) {
  switch (pick(3)) {
    case 0: return gen_let(bool_type(), depth);
    case 1: return gen_beta(bool_type(), depth);
    default: return literal(bool_type());
  }
}

Expr TermGen::gen_list(int depth) {
  switch (pick(6)) {
    case 0: {
      std::vector<Expr> elems;
      const int n = pick(4);
      for (int i = 0; i < n; ++i) elems.push_back(gen(int_type(), depth - 1));
      return mk_list(int_type(), elems);
    }
    case 1: return mk_cons(gen(int_type(), depth - 1), gen(int_list(), depth - 1));
    case 2:
      return mk_apps(mk_ident(Ident::map(int_type(), int_type())), {gen(int_int(), depth - 1), gen(int_list(), depth - 1)});
    case 3: return gen_let(int_list(), depth);
    case 4: return gen_beta(int_list(), depth);
    default: {
      // Rebuild a list with list_rect, keeping the list motive.
      const Ident lr = Ident::list_rect(int_type(), int_list());
      const VarId h = fresh_var_id();
      const VarId tl = fresh_var_id();
      const VarId r = fresh_var_id();
      scope_.push_back(mk_var(h, int_type(), "h"));
      Expr head = gen(int_type(), depth - 1);
      scope_.pop_back();
      Expr body = mk_cons(head, mk_var(r, int_list(), "r"));
      Expr step = mk_abs(h, int_type(),
                         mk_abs(tl, int_list(), mk_abs(r, int_list(), body, intern_hint("r")), intern_hint("t")),
                         intern_hint("h"));
      return mk_apps(mk_ident(lr), {mk_list(int_type(), {}), step, gen(int_list(), depth - 1)});
    }
  }
}

Expr TermGen::gen_pair(Type t, int depth) {
  switch (pick(4)) {
    case 0: return gen_let(t, depth);
    case 1: return gen_beta(t, depth);
    case 2:
      if (t == int_pair()) {
        return mk_apps(mk_ident(Ident::prim(IdentTag::AddWithCarry64)),
                       {gen(int_type(), depth - 1), gen(int_type(), depth - 1)});
      }
      [[fallthrough]];
    default: return mk_pair(gen(t->first, depth - 1), gen(t->second, depth - 1));
  }
}

Expr TermGen::gen_arrow(Type t, int depth) {
  switch (pick(5)) {
    case 0:
      if (t == arrow_type(int_type(), int_int())) return mk_ident(Ident::prim(IdentTag::Add));
      if (t == int_int()) return mk_app(mk_ident(Ident::prim(IdentTag::Mul)), gen(int_type(), depth - 1));
      [[fallthrough]];
    case 1: return gen_let(t, depth);
    default: return with_binder(t->domain(), "a", depth - 1, t->codomain());
  }
}

Expr TermGen::gen(Type t, int depth) {
  const bool shallow = depth <= 1;
  if (Expr v = var_of(t); v && (depth <= 0 || chance(shallow ? 40 : 10))) return v;
  if (depth <= 0) return literal(t);
  if (chance(shallow ? 20 : 5)) return literal(t);
  switch (t->kind) {
    case TypeKind::Int: return gen_int(depth);
    case TypeKind::Bool: return gen_bool(depth);
    case TypeKind::List: return t == int_list() ? gen_list(depth) : literal(t);
    case TypeKind::Pair: return gen_pair(t, depth);
    case TypeKind::Arrow: return gen_arrow(t, depth);
    default: return literal(t);
  }
}

Expr TermGen::random_term() {
  // Retry a few times so that most terms are not a bare leaf.
  Expr e;
  for (int attempt = 0; attempt < 4; ++attempt) {
    e = gen(random_type(true), options_.max_depth);
    if (term_size(e) >= 4) break;
  }
  return e;
}

// ---------------------------------------------------------------------------

namespace {

class RuleGen {
 public:
  explicit RuleGen(Rng& rng) : rng_(rng) {}

  int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

  Pattern pattern(Type t, int depth, RewriteRule& rule, bool root) {
    if (!root && (depth <= 1 || pick(100) < 35)) {
      if (t == int_type() && pick(100) < 20) return mk_pat_ident(mk_lit());
      const int v = static_cast<int>(rule.vars.size());
      const bool constant = t == int_type() && pick(100) < 35;
      rule.vars.push_back({"v" + std::to_string(v), t, constant, fresh_var_id()});
      return constant ? pat_const(v, t) : pat_wildcard(v, t);
    }
    if (t == int_pair()) {
      const Pattern head = pick(2) ? pat_ident(Ident::pair(int_type(), int_type()))
                                   : pat_ident(Ident::prim(IdentTag::AddWithCarry64));
      return pat_apps(head, {pattern(int_type(), depth - 1, rule, false), pattern(int_type(), depth - 1, rule, false)});
    }
    switch (pick(root ? 5 : 6)) {
      case 0: return binop(IdentTag::Add, depth, rule);
      case 1: return binop(IdentTag::Sub, depth, rule);
      case 2: return binop(IdentTag::Mul, depth, rule);
      case 3: return pat_app(pat_ident(Ident::fst(int_type(), int_type())), pattern(int_pair(), depth - 1, rule, false));
      case 4: {
        Pattern fn;
        if (pick(2)) {
          fn = pat_ident(opaque_g());
        } else if (pick(2)) {
          fn = pat_ident(Ident::clip(pick(3), 10 + pick(3)));
        } else {
          const int lo = static_cast<int>(rule.vars.size());
          rule.vars.push_back({"v" + std::to_string(lo), int_type(), true, fresh_var_id()});
          rule.vars.push_back({"v" + std::to_string(lo + 1), int_type(), true, fresh_var_id()});
          fn = pat_clip(ClipParam{lo, 0}, ClipParam{lo + 1, 0});
        }
        return pat_app(fn, pattern(int_type(), depth - 1, rule, false));
      }
      default: return mk_pat_ident(mk_lit());
    }
  }

  Pattern binop(IdentTag tag, int depth, RewriteRule& rule) {
    return pat_apps(pat_ident(Ident::prim(tag)),
                    {pattern(int_type(), depth - 1, rule, false), pattern(int_type(), depth - 1, rule, false)});
  }

  Ident mk_lit() { return Ident::int_lit(pick(3)); }
  Pattern mk_pat_ident(Ident id) { return pat_ident(std::move(id)); }

  static Ident opaque_g() { return Ident::opaque("g", int_int()); }

  /// A random term of type `t` over x, y, literals and the rule signature.
  Expr term(Type t, int depth) {
    if (t == int_pair()) {
      const Ident head = pick(2) ? Ident::pair(int_type(), int_type()) : Ident::prim(IdentTag::AddWithCarry64);
      return mk_apps(mk_ident(head), {term(int_type(), depth - 1), term(int_type(), depth - 1)});
    }
    if (depth <= 0 || pick(100) < 25) {
      switch (pick(3)) {
        case 0: return x_;
        case 1: return y_;
        default: return mk_int(pick(3));
      }
    }
    switch (pick(6)) {
      case 0: return mk_binop(IdentTag::Add, term(t, depth - 1), term(t, depth - 1));
      case 1: return mk_binop(IdentTag::Sub, term(t, depth - 1), term(t, depth - 1));
      case 2: return mk_binop(IdentTag::Mul, term(t, depth - 1), term(t, depth - 1));
      case 3: return mk_app(mk_ident(Ident::fst(int_type(), int_type())), term(int_pair(), depth - 1));
      case 4: return mk_app(mk_ident(opaque_g()), term(t, depth - 1));
      default: return mk_clip(pick(3), 10 + pick(3), term(t, depth - 1));
    }
  }

  /// An instance of `p`: wildcards become random terms, constant wildcards literals.
  Expr instance(const Pattern& p, int depth) {
    switch (p->kind) {
      case PatternKind::Wildcard: return term(p->type, depth);
      case PatternKind::ConstWildcard: return mk_int(pick(3));
      case PatternKind::Ident: return mk_ident(*p->ident);
      case PatternKind::App: return mk_app(instance(p->fn, depth), instance(p->arg, depth));
      case PatternKind::Clip: return mk_ident(Ident::clip(pick(3), 10 + pick(3)));
    }
    return nullptr;
  }

 private:
  Rng& rng_;
  Expr x_ = mk_var(fresh_var_id(), int_type(), "x");
  Expr y_ = mk_var(fresh_var_id(), int_type(), "y");
};

}  // namespace

RuleSetCase random_rule_set(Rng& rng, int max_rules, int max_depth, int num_terms) {
  RuleGen g(rng);
  RuleSetCase out;
  const int n = 1 + g.pick(max_rules);
  for (int i = 0; i < n; ++i) {
    RewriteRule r;
    r.name = "r" + std::to_string(i);
    r.priority = i;
    r.lhs = g.pattern(int_type(), 1 + g.pick(max_depth), r, true);
    std::vector<int> consts;
    for (std::size_t v = 0; v < r.vars.size(); ++v) {
      if (r.vars[v].constant) consts.push_back(static_cast<int>(v));
    }
    if (!consts.empty() && g.pick(100) < 40) {
      const int v = consts[static_cast<std::size_t>(g.pick(static_cast<int>(consts.size())))];
      r.when = g.pick(2) ? cond_binary(CondOp::Lt, cond_var(v), cond_lit(2))
                         : cond_binary(CondOp::Eq, cond_var(v), cond_lit(1));
    }
    // rhs: a variable of the lhs type when available, otherwise a literal.
    r.rhs = mk_int(i);
    for (const auto& v : r.vars) {
      if (v.type == int_type() && g.pick(2)) {
        r.rhs = mk_var(v.id, v.type, v.name);
        break;
      }
    }
    out.rules.push_back(std::move(r));
  }
  for (int k = 0; k < num_terms; ++k) {
    if (g.pick(2)) {
      const auto& r = out.rules[static_cast<std::size_t>(g.pick(static_cast<int>(out.rules.size())))];
      out.terms.push_back(g.instance(r.lhs, 2));
    } else {
      out.terms.push_back(g.term(int_type(), 1 + g.pick(max_depth)));
    }
  }
  return out;
}

StraightlineCase random_straightline(Rng& rng, int inputs, int lines) {
  auto pick = [&rng](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  StraightlineCase out;
  std::vector<Expr> ints;
  std::vector<std::pair<VarId, const std::string*>> params;
  for (int i = 0; i < inputs; ++i) {
    const VarId id = fresh_var_id();
    const std::string name = "in" + std::to_string(i);
    ints.push_back(mk_var(id, int_type(), name));
    params.emplace_back(id, intern_hint(name));
    out.params.push_back(id);
    const Int hi = Int(1) << (8 + pick(56));
    out.bounds.emplace(id, AbstractValue::interval(0, hi));
    out.ranges.emplace(id, std::make_pair(Int(0), hi));
  }
  struct Line {
    VarId id;
    Expr rhs;
    std::string hint;
  };
  std::vector<Line> body;
  auto operand = [&]() -> Expr {
    if (pick(100) < 15) return mk_int(pick(16));
    return ints[static_cast<std::size_t>(pick(static_cast<int>(ints.size())))];
  };
  for (int k = 0; k < lines; ++k) {
    Expr rhs;
    Type t = int_type();
    switch (pick(6)) {
      case 0: rhs = mk_binop(IdentTag::Add, operand(), operand()); break;
      case 1: rhs = mk_binop(IdentTag::Sub, operand(), operand()); break;
      case 2: rhs = mk_binop(IdentTag::Mul, operand(), operand()); break;
      case 3: rhs = mk_binop(IdentTag::Shr, operand(), mk_int(pick(8))); break;
      case 4: rhs = mk_app(mk_ident(Ident::clip(0, Int(1) << 20)), operand()); break;
      default: {
        // Pair from a carrying add, then one of its projections.
        const VarId pid = fresh_var_id();
        Expr p = mk_apps(mk_ident(Ident::prim(IdentTag::AddWithCarry64)), {operand(), operand()});
        body.push_back({pid, p, "p" + std::to_string(k)});
        const Expr pv = mk_var(pid, int_pair(), "p" + std::to_string(k));
        rhs = mk_app(mk_ident(pick(2) ? Ident::fst(int_type(), int_type()) : Ident::snd(int_type(), int_type())), pv);
      }
    }
    const VarId id = fresh_var_id();
    const std::string hint = "t" + std::to_string(k);
    body.push_back({id, rhs, hint});
    ints.push_back(mk_var(id, t, hint));
  }
  Expr e = ints.back();
  for (auto it = body.rbegin(); it != body.rend(); ++it) e = mk_let(it->id, it->rhs, e, intern_hint(it->hint));
  for (auto it = params.rbegin(); it != params.rend(); ++it) e = mk_abs(it->first, int_type(), e, it->second);
  out.program = e;
  return out;
}

}  // namespace rwpe::testing
