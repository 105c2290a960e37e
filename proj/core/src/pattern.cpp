#include "rwpe/pattern.hpp"

#include "rwpe/errors.hpp"

namespace rwpe {

Pattern pat_wildcard(int var, Type type) {
  return std::make_shared<const PatternNode>(PatternNode{PatternKind::Wildcard, type, var, {}, {}, {}, {}, {}});
}

Pattern pat_const(int var, Type type) {
  return std::make_shared<const PatternNode>(
      PatternNode{PatternKind::ConstWildcard, type, var, {}, {}, {}, {}, {}});
}

Pattern pat_ident(Ident id) {
  Type t = id.type();
  return std::make_shared<const PatternNode>(PatternNode{PatternKind::Ident, t, -1, std::move(id), {}, {}, {}, {}});
}

Pattern pat_app(Pattern fn, Pattern arg) {
  if (!fn->type->is_arrow() || fn->type->domain() != arg->type) {
    throw TypeError("pattern application of " + to_string(fn->type) + " to " + to_string(arg->type));
  }
  Type t = fn->type->codomain();
  return std::make_shared<const PatternNode>(
      PatternNode{PatternKind::App, t, -1, {}, std::move(fn), std::move(arg), {}, {}});
}

Pattern pat_apps(Pattern fn, const std::vector<Pattern>& args) {
  for (const auto& a : args) fn = pat_app(std::move(fn), a);
  return fn;
}

Pattern pat_clip(ClipParam lo, ClipParam hi) {
  return std::make_shared<const PatternNode>(PatternNode{
      PatternKind::Clip, arrow_type(int_type(), int_type()), -1, {}, {}, {}, std::move(lo), std::move(hi)});
}

namespace {

bool bind_clip_param(const ClipParam& p, const Int& actual, Bindings& out) {
  if (!p.is_var()) return p.value == actual;
  const Expr lit = mk_int(actual);
  if (out[p.var]) {
    const Int* prev = as_int_lit(out[p.var]);
    return prev && *prev == actual;
  }
  out[p.var] = lit;
  return true;
}

bool match_rec(const PatternNode& p, const Expr& e, Bindings& out) {
  switch (p.kind) {
    case PatternKind::Wildcard:
    case PatternKind::ConstWildcard:
    case PatternKind::Clip:
      return bind_wildcard_like(p, e, out);
    case PatternKind::Ident:
      return e->kind() == ExprKind::Ident && e->ident() == *p.ident;
    case PatternKind::App:
      return e->kind() == ExprKind::App && match_rec(*p.fn, e->fn(), out) && match_rec(*p.arg, e->arg(), out);
  }
  return false;
}

}  // namespace

bool bind_wildcard_like(const PatternNode& p, const Expr& e, Bindings& out) {
  switch (p.kind) {
    case PatternKind::Wildcard:
      if (e->type() != p.type) return false;
      out[p.var] = e;
      return true;
    case PatternKind::ConstWildcard:
      if (e->type() != p.type || !is_constant(e)) return false;
      out[p.var] = e;
      return true;
    case PatternKind::Clip:
      if (e->kind() != ExprKind::Ident || e->ident().tag() != IdentTag::Clip) return false;
      return bind_clip_param(p.lo, e->ident().clip_lo(), out) && bind_clip_param(p.hi, e->ident().clip_hi(), out);
    default:
      return false;
  }
}

std::optional<Bindings> match_pattern(const Pattern& p, const Expr& e, std::size_t num_vars) {
  Bindings out(num_vars);
  if (!match_rec(*p, e, out)) return std::nullopt;
  return out;
}

void pattern_vars(const Pattern& p, std::vector<int>& out) {
  switch (p->kind) {
    case PatternKind::Wildcard:
    case PatternKind::ConstWildcard:
      out.push_back(p->var);
      return;
    case PatternKind::Clip:
      if (p->lo.is_var()) out.push_back(p->lo.var);
      if (p->hi.is_var()) out.push_back(p->hi.var);
      return;
    case PatternKind::App:
      pattern_vars(p->fn, out);
      pattern_vars(p->arg, out);
      return;
    case PatternKind::Ident:
      return;
  }
}

}  // namespace rwpe
