#include "rwpe/side_condition.hpp"

#include "rwpe/errors.hpp"

namespace rwpe {

CondExpr cond_lit(Int value) {
  return std::make_shared<const CondNode>(CondNode{CondOp::Lit, std::move(value), -1, {}, {}});
}

CondExpr cond_bool(bool value) {
  return std::make_shared<const CondNode>(CondNode{CondOp::BoolLit, Int(value ? 1 : 0), -1, {}, {}});
}

CondExpr cond_var(int var) { return std::make_shared<const CondNode>(CondNode{CondOp::Var, Int(0), var, {}, {}}); }

CondExpr cond_unary(CondOp op, CondExpr operand) {
  return std::make_shared<const CondNode>(CondNode{op, Int(0), -1, std::move(operand), {}});
}

CondExpr cond_binary(CondOp op, CondExpr lhs, CondExpr rhs) {
  return std::make_shared<const CondNode>(CondNode{op, Int(0), -1, std::move(lhs), std::move(rhs)});
}

namespace {

CondValue eval(const CondNode& c, const Bindings& b) {
  auto as_int = [](const CondValue& v) -> const Int* {
    return v && std::holds_alternative<Int>(*v) ? &std::get<Int>(*v) : nullptr;
  };
  auto as_bool = [](const CondValue& v) -> std::optional<bool> {
    if (v && std::holds_alternative<bool>(*v)) return std::get<bool>(*v);
    return std::nullopt;
  };
  switch (c.op) {
    case CondOp::Lit: return c.value;
    case CondOp::BoolLit: return c.value != 0;
    case CondOp::Var: {
      if (c.var < 0 || static_cast<std::size_t>(c.var) >= b.size() || !b[c.var]) {
        throw NonConstantBinding("side-condition variable is unbound");
      }
      const Expr& e = b[c.var];
      if (const Int* i = as_int_lit(e)) return *i;
      if (e->kind() == ExprKind::Ident && e->ident().tag() == IdentTag::BoolLit) return e->ident().bool_value();
      throw NonConstantBinding("side-condition variable bound to a non-literal");
    }
    case CondOp::Log2Floor: {
      CondValue v = eval(*c.lhs, b);
      const Int* i = as_int(v);
      if (!i) return std::nullopt;
      auto r = log2_floor(*i);
      if (!r) return std::nullopt;
      return *r;
    }
    case CondOp::Not: {
      auto v = as_bool(eval(*c.lhs, b));
      if (!v) return std::nullopt;
      return !*v;
    }
    case CondOp::And: {
      auto l = as_bool(eval(*c.lhs, b));
      if (!l) return std::nullopt;
      if (!*l) return false;
      auto r = as_bool(eval(*c.rhs, b));
      if (!r) return std::nullopt;
      return *r;
    }
    case CondOp::Or: {
      auto l = as_bool(eval(*c.lhs, b));
      if (!l) return std::nullopt;
      if (*l) return true;
      auto r = as_bool(eval(*c.rhs, b));
      if (!r) return std::nullopt;
      return *r;
    }
    default: break;
  }
  CondValue lv = eval(*c.lhs, b);
  CondValue rv = eval(*c.rhs, b);
  if (c.op == CondOp::Eq && as_bool(lv) && as_bool(rv)) return *as_bool(lv) == *as_bool(rv);
  const Int* l = as_int(lv);
  const Int* r = as_int(rv);
  if (!l || !r) return std::nullopt;
  switch (c.op) {
    case CondOp::Add: return *l + *r;
    case CondOp::Sub: return *l - *r;
    case CondOp::Mul: return *l * *r;
    case CondOp::Pow: {
      auto p = checked_pow(*l, *r);
      if (!p) return std::nullopt;
      return *p;
    }
    case CondOp::Eq: return *l == *r;
    case CondOp::Lt: return *l < *r;
    case CondOp::Le: return *l <= *r;
    default: return std::nullopt;
  }
}

int precedence(CondOp op) {
  switch (op) {
    case CondOp::Or: return 1;
    case CondOp::And: return 2;
    case CondOp::Not: return 3;
    case CondOp::Eq:
    case CondOp::Lt:
    case CondOp::Le: return 4;
    case CondOp::Add:
    case CondOp::Sub: return 5;
    case CondOp::Mul: return 6;
    case CondOp::Pow: return 7;
    case CondOp::Log2Floor: return 8;
    default: return 9;
  }
}

std::string render(const CondNode& c, int context, const std::function<std::string(int)>& name_of) {
  const int p = precedence(c.op);
  std::string s;
  switch (c.op) {
    case CondOp::Lit: s = c.value < 0 ? "(" + to_string(c.value) + ")" : to_string(c.value); break;
    case CondOp::BoolLit: s = c.value != 0 ? "true" : "false"; break;
    case CondOp::Var: s = name_of(c.var); break;
    case CondOp::Log2Floor: s = "log2floor " + render(*c.lhs, 9, name_of); break;
    case CondOp::Not: s = "not " + render(*c.lhs, 3, name_of); break;
    default: {
      const char* sym = "";
      switch (c.op) {
        case CondOp::Add: sym = " + "; break;
        case CondOp::Sub: sym = " - "; break;
        case CondOp::Mul: sym = " * "; break;
        case CondOp::Pow: sym = " ^ "; break;
        case CondOp::Eq: sym = " == "; break;
        case CondOp::Lt: sym = " < "; break;
        case CondOp::Le: sym = " <= "; break;
        case CondOp::And: sym = " && "; break;
        case CondOp::Or: sym = " || "; break;
        default: break;
      }
      const bool comparison = p == 4;
      const bool right_assoc = c.op == CondOp::Pow;
      const int lp = comparison ? p + 1 : (right_assoc ? p + 1 : p);
      const int rp = comparison ? p + 1 : (right_assoc ? p : p + 1);
      s = render(*c.lhs, lp, name_of) + sym + render(*c.rhs, rp, name_of);
    }
  }
  return p < context ? "(" + s + ")" : s;
}

}  // namespace

bool eval_side_condition(const CondExpr& c, const Bindings& b) {
  CondValue v = eval(*c, b);
  return v && std::holds_alternative<bool>(*v) && std::get<bool>(*v);
}

std::optional<Int> eval_cond_int(const CondExpr& c, const Bindings& b) {
  CondValue v = eval(*c, b);
  if (!v || !std::holds_alternative<Int>(*v)) return std::nullopt;
  return std::get<Int>(*v);
}

void cond_vars(const CondExpr& c, std::vector<int>& out) {
  if (!c) return;
  if (c->op == CondOp::Var) out.push_back(c->var);
  cond_vars(c->lhs, out);
  cond_vars(c->rhs, out);
}

std::string to_string(const CondExpr& c, const std::function<std::string(int)>& name_of) {
  return render(*c, 0, name_of);
}

}  // namespace rwpe
