#include "rwpe/value.hpp"

#include "rwpe/errors.hpp"

namespace rwpe {

Value Value::pair(Value a, Value b) {
  return Value(Data(std::in_place_index<4>, std::make_shared<const PairCell>(PairCell{std::move(a), std::move(b)})));
}

Value Value::function(std::function<Value(const Value&)> fn) {
  return Value(Data(std::in_place_index<5>, std::make_shared<const FunctionValue>(FunctionValue{std::move(fn)})));
}

Value Value::list_of(const std::vector<Value>& elems) {
  List l;
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
    l = std::make_shared<const ConsCell>(ConsCell{*it, std::move(l)});
  }
  return list(std::move(l));
}

const Int& Value::as_int() const {
  if (!is_int()) throw EvalError("expected an integer value");
  return std::get<1>(data_);
}

bool Value::as_bool() const {
  if (!is_bool()) throw EvalError("expected a boolean value");
  return std::get<2>(data_);
}

const Value::List& Value::as_list() const {
  if (!is_list()) throw EvalError("expected a list value");
  return std::get<3>(data_);
}

const PairCell& Value::as_pair() const {
  if (!is_pair()) throw EvalError("expected a pair value");
  return *std::get<4>(data_);
}

Value Value::operator()(const Value& arg) const {
  if (!is_function()) throw EvalError("applying a non-function value");
  return std::get<5>(data_)->fn(arg);
}

std::vector<Value> Value::elements() const {
  std::vector<Value> out;
  for (const ConsCell* c = as_list().get(); c; c = c->tail.get()) out.push_back(c->head);
  return out;
}

Value cons_value(Value head, Value::List tail) {
  return Value::list(std::make_shared<const ConsCell>(ConsCell{std::move(head), std::move(tail)}));
}

bool values_equal(const Value& a, const Value& b) {
  if (a.is_int() && b.is_int()) return a.as_int() == b.as_int();
  if (a.is_bool() && b.is_bool()) return a.as_bool() == b.as_bool();
  if (a.is_unit() && b.is_unit()) return true;
  if (a.is_pair() && b.is_pair()) {
    return values_equal(a.as_pair().first, b.as_pair().first) &&
           values_equal(a.as_pair().second, b.as_pair().second);
  }
  if (a.is_list() && b.is_list()) {
    const ConsCell* x = a.as_list().get();
    const ConsCell* y = b.as_list().get();
    for (; x && y; x = x->tail.get(), y = y->tail.get()) {
      if (!values_equal(x->head, y->head)) return false;
    }
    return !x && !y;
  }
  return false;
}

std::string to_string(const Value& v) {
  if (v.is_int()) return to_string(v.as_int());
  if (v.is_bool()) return v.as_bool() ? "true" : "false";
  if (v.is_unit()) return "()";
  if (v.is_pair()) return "(" + to_string(v.as_pair().first) + ", " + to_string(v.as_pair().second) + ")";
  if (v.is_list()) {
    std::string s = "[";
    bool first = true;
    for (const auto& e : v.elements()) {
      if (!first) s += "; ";
      first = false;
      s += to_string(e);
    }
    return s + "]";
  }
  return "<fun>";
}

bool value_has_type(const Value& v, Type t) {
  switch (t->kind) {
    case TypeKind::Int: return v.is_int();
    case TypeKind::Bool: return v.is_bool();
    case TypeKind::Unit: return v.is_unit();
    case TypeKind::Pair:
      return v.is_pair() && value_has_type(v.as_pair().first, t->first) &&
             value_has_type(v.as_pair().second, t->second);
    case TypeKind::List: {
      if (!v.is_list()) return false;
      for (const ConsCell* c = v.as_list().get(); c; c = c->tail.get()) {
        if (!value_has_type(c->head, t->first)) return false;
      }
      return true;
    }
    case TypeKind::Arrow: return v.is_function();
  }
  return false;
}

}  // namespace rwpe
