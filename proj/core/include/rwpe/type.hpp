#pragma once

#include <cstddef>
#include <string>

namespace rwpe {

enum class TypeKind { Int, Bool, Unit, List, Pair, Arrow };

struct TypeNode;

/// Types are hash-consed: two types are equal iff their pointers are equal.
using Type = const TypeNode*;

struct TypeNode {
  TypeKind kind;
  Type first = nullptr;   // List element, Pair first, Arrow domain
  Type second = nullptr;  // Pair second, Arrow codomain

  bool is_base() const noexcept { return kind != TypeKind::Arrow; }
  bool is_arrow() const noexcept { return kind == TypeKind::Arrow; }
  Type domain() const noexcept { return first; }
  Type codomain() const noexcept { return second; }
};

Type int_type();
Type bool_type();
Type unit_type();
/// Throws TypeError when `elem` is an arrow.
Type list_type(Type elem);
/// Throws TypeError when either component is an arrow.
Type pair_type(Type first, Type second);
Type arrow_type(Type domain, Type codomain);
/// Right-nested arrow `args[0] -> ... -> result`.
Type arrow_type(std::initializer_list<Type> args, Type result);

/// Number of arguments a value of this type accepts before reaching a base type.
std::size_t arity(Type t);
/// The base type reached after applying `arity(t)` arguments.
Type result_type(Type t);

std::string to_string(Type t);

}  // namespace rwpe
