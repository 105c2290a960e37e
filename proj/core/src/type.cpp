#include "rwpe/type.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "rwpe/errors.hpp"

namespace rwpe {
namespace {

Type intern(TypeKind kind, Type first, Type second) {
  static std::mutex mutex;
  static std::map<std::tuple<TypeKind, Type, Type>, std::unique_ptr<TypeNode>> table;
  std::lock_guard lock(mutex);
  auto& slot = table[{kind, first, second}];
  if (!slot) slot = std::make_unique<TypeNode>(TypeNode{kind, first, second});
  return slot.get();
}

std::string render(Type t, int context) {
  // context: 0 = arrow operand position allowing arrows, 1 = pair operand, 2 = list argument
  switch (t->kind) {
    case TypeKind::Int: return "int";
    case TypeKind::Bool: return "bool";
    case TypeKind::Unit: return "unit";
    case TypeKind::List: {
      std::string s = "list " + render(t->first, 2);
      return context >= 2 ? "(" + s + ")" : s;
    }
    case TypeKind::Pair: {
      std::string s = render(t->first, 1) + " * " + render(t->second, 2);
      return context >= 1 ? "(" + s + ")" : s;
    }
    case TypeKind::Arrow: {
      std::string s = render(t->first, 1) + " -> " + render(t->second, 0);
      return context >= 1 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

}  // namespace

Type int_type() {
  static const Type t = intern(TypeKind::Int, nullptr, nullptr);
  return t;
}

Type bool_type() {
  static const Type t = intern(TypeKind::Bool, nullptr, nullptr);
  return t;
}

Type unit_type() {
  static const Type t = intern(TypeKind::Unit, nullptr, nullptr);
  return t;
}

Type list_type(Type elem) {
  if (!elem->is_base()) throw TypeError("list element type must be a base type, got " + to_string(elem));
  return intern(TypeKind::List, elem, nullptr);
}

Type pair_type(Type first, Type second) {
  if (!first->is_base() || !second->is_base()) {
    throw TypeError("pair components must be base types, got " + to_string(first) + " and " +
                    to_string(second));
  }
  return intern(TypeKind::Pair, first, second);
}

Type arrow_type(Type domain, Type codomain) { return intern(TypeKind::Arrow, domain, codomain); }

Type arrow_type(std::initializer_list<Type> args, Type result) {
  Type t = result;
  for (auto it = args.end(); it != args.begin();) t = arrow_type(*--it, t);
  return t;
}

std::size_t arity(Type t) {
  std::size_t n = 0;
  for (; t->is_arrow(); t = t->codomain()) ++n;
  return n;
}

Type result_type(Type t) {
  while (t->is_arrow()) t = t->codomain();
  return t;
}

std::string to_string(Type t) { return render(t, 0); }

}  // namespace rwpe
