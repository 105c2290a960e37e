#include "rwpe/denote.hpp"

#include <memory>

#include "rwpe/errors.hpp"

namespace rwpe {
namespace {

struct Frame {
  VarId id;
  Value value;
  std::shared_ptr<const Frame> next;
};
using Scope = std::shared_ptr<const Frame>;

Value curry(std::size_t n, std::function<Value(std::vector<Value>&)> body, std::vector<Value> acc = {}) {
  if (acc.size() == n) return body(acc);
  return Value::function([n, body = std::move(body), acc = std::move(acc)](const Value& v) {
    auto next = acc;
    next.push_back(v);
    return curry(n, body, std::move(next));
  });
}

Value apply_prim(const Ident& id, std::vector<Value>& args, const OpaqueImpls* opaques) {
  auto i = [&](std::size_t k) -> const Int& { return args[k].as_int(); };
  switch (id.tag()) {
    case IdentTag::Add: return Value::integer(i(0) + i(1));
    case IdentTag::Sub: return Value::integer(i(0) - i(1));
    case IdentTag::Mul: return Value::integer(i(0) * i(1));
    case IdentTag::Div:
      if (i(1) == 0) throw EvalError("DivisionByZero");
      return Value::integer(floor_div(i(0), i(1)));
    case IdentTag::Shr: {
      auto r = shift_right(i(0), i(1));
      if (!r) throw EvalError("shift amount out of range");
      return Value::integer(std::move(*r));
    }
    case IdentTag::Pow: {
      auto r = checked_pow(i(0), i(1));
      if (!r) throw EvalError("exponent negative or out of range");
      return Value::integer(std::move(*r));
    }
    case IdentTag::Log2Floor: {
      auto r = log2_floor(i(0));
      return Value::integer(r ? *r : Int(0));
    }
    case IdentTag::AddWithCarry64: {
      Int s = i(0) + i(1);
      return Value::pair(Value::integer(floor_div(s, two_pow_64())), Value::integer(floor_mod(s, two_pow_64())));
    }
    case IdentTag::Clip: return Value::integer(clip_semantics(id.clip_lo(), id.clip_hi(), i(0)));
    case IdentTag::Fst: return args[0].as_pair().first;
    case IdentTag::Snd: return args[0].as_pair().second;
    case IdentTag::PairMk: return Value::pair(args[0], args[1]);
    case IdentTag::Cons: return cons_value(args[0], args[1].as_list());
    case IdentTag::Comment: return args[0];
    case IdentTag::Map: {
      std::vector<Value> out;
      for (const auto& x : args[1].elements()) out.push_back(args[0](x));
      return Value::list_of(out);
    }
    case IdentTag::ListRect: {
      std::vector<const ConsCell*> cells;
      for (const ConsCell* c = args[2].as_list().get(); c; c = c->tail.get()) cells.push_back(c);
      Value acc = args[0];
      for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
        acc = args[1]((*it)->head)(Value::list((*it)->tail))(acc);
      }
      return acc;
    }
    case IdentTag::NatRect: {
      Value acc = args[0];
      for (Int k = 0; k < i(2); ++k) acc = args[1](Value::integer(k))(acc);
      return acc;
    }
    case IdentTag::Opaque: {
      if (!opaques) throw EvalError("no interpretation for opaque symbol " + id.text());
      auto it = opaques->find(id.text());
      if (it == opaques->end()) throw EvalError("no interpretation for opaque symbol " + id.text());
      Value v = it->second;
      for (const auto& a : args) v = v(a);
      return v;
    }
    default: break;
  }
  throw EvalError("identifier " + to_string(id) + " is not a function");
}

Value literal_value(const Ident& id) {
  switch (id.tag()) {
    case IdentTag::IntLit: return Value::integer(id.int_value());
    case IdentTag::BoolLit: return Value::boolean(id.bool_value());
    case IdentTag::UnitLit: return Value::unit();
    case IdentTag::Nil: return Value::list(nullptr);
    default: throw EvalError("not a literal");
  }
}

class Interpreter : public std::enable_shared_from_this<Interpreter> {
 public:
  Interpreter(ValueEnv env, const OpaqueImpls* opaques) : outer_(std::move(env)), opaques_(opaques) {}

  Value eval(const Expr& root, Scope scope) {
    const Expr* e = &root;
    while ((*e)->kind() == ExprKind::LetIn) {
      Value v = eval((*e)->rhs(), scope);
      scope = std::make_shared<const Frame>(Frame{(*e)->var(), std::move(v), std::move(scope)});
      e = &(*e)->body();
    }
    switch ((*e)->kind()) {
      case ExprKind::Var: return lookup((*e)->var(), scope);
      case ExprKind::Ident:
        if (arity((*e)->ident().type()) == 0 && (*e)->ident().tag() != IdentTag::Opaque) {
          return literal_value((*e)->ident());
        }
        return denote_ident((*e)->ident(), opaques_);
      case ExprKind::Abs: {
        Expr body = (*e)->body();
        VarId param = (*e)->var();
        return Value::function([self = shared_from_this(), body, param, scope](const Value& x) {
          return self->eval(body, std::make_shared<const Frame>(Frame{param, x, scope}));
        });
      }
      case ExprKind::App: {
        Spine sp = app_spine(*e);
        if (sp.head->kind() == ExprKind::Ident && sp.args.size() == arity(sp.head->ident().type())) {
          std::vector<Value> args;
          args.reserve(sp.args.size());
          for (const auto& a : sp.args) args.push_back(eval(a, scope));
          return apply_prim(sp.head->ident(), args, opaques_);
        }
        Value f = eval((*e)->fn(), scope);
        Value a = eval((*e)->arg(), scope);
        return f(a);
      }
      case ExprKind::LetIn: break;
    }
    throw EvalError("unreachable");
  }

 private:
  Value lookup(VarId id, const Scope& scope) const {
    for (const Frame* f = scope.get(); f; f = f->next.get()) {
      if (f->id == id) return f->value;
    }
    if (auto it = outer_.find(id); it != outer_.end()) return it->second;
    throw EvalError("unbound variable v" + std::to_string(id));
  }

  ValueEnv outer_;
  const OpaqueImpls* opaques_;
};

}  // namespace

Value denote_ident(const Ident& id, const OpaqueImpls* opaques) {
  const std::size_t n = arity(id.type());
  if (n == 0 && id.tag() != IdentTag::Opaque) return literal_value(id);
  return curry(n, [id, opaques](std::vector<Value>& args) { return apply_prim(id, args, opaques); });
}

Value denote(const Expr& e, const ValueEnv& env, const OpaqueImpls* opaques) {
  return std::make_shared<Interpreter>(env, opaques)->eval(e, nullptr);
}

}  // namespace rwpe
