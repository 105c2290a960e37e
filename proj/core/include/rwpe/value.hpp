#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "rwpe/int.hpp"
#include "rwpe/type.hpp"

namespace rwpe {

class Value;
struct ConsCell;
struct PairCell;
struct FunctionValue;

/// Runtime value of the reference interpreter. Lists are persistent cons
/// cells (null = empty list).
class Value {
 public:
  using List = std::shared_ptr<const ConsCell>;
  using Pair = std::shared_ptr<const PairCell>;
  using Function = std::shared_ptr<const FunctionValue>;

  Value() : data_(std::monostate{}) {}
  static Value integer(Int v) { return Value(Data(std::in_place_index<1>, std::move(v))); }
  static Value boolean(bool v) { return Value(Data(std::in_place_index<2>, v)); }
  static Value unit() { return Value(); }
  static Value list(List l) { return Value(Data(std::in_place_index<3>, std::move(l))); }
  static Value pair(Value a, Value b);
  static Value function(std::function<Value(const Value&)> fn);
  static Value list_of(const std::vector<Value>& elems);

  bool is_int() const noexcept { return data_.index() == 1; }
  bool is_bool() const noexcept { return data_.index() == 2; }
  bool is_unit() const noexcept { return data_.index() == 0; }
  bool is_list() const noexcept { return data_.index() == 3; }
  bool is_pair() const noexcept { return data_.index() == 4; }
  bool is_function() const noexcept { return data_.index() == 5; }

  const Int& as_int() const;
  bool as_bool() const;
  const List& as_list() const;
  const PairCell& as_pair() const;
  Value operator()(const Value& arg) const;

  /// Elements of a list value.
  std::vector<Value> elements() const;

 private:
  using Data = std::variant<std::monostate, Int, bool, List, Pair, Function>;
  explicit Value(Data d) : data_(std::move(d)) {}
  Data data_;
};

struct ConsCell {
  Value head;
  Value::List tail;
};

struct PairCell {
  Value first;
  Value second;
};

struct FunctionValue {
  std::function<Value(const Value&)> fn;
};

Value cons_value(Value head, Value::List tail);

/// Structural equality on first-order values; functions never compare equal.
bool values_equal(const Value& a, const Value& b);

std::string to_string(const Value& v);

/// True when `v` has the shape dictated by `t`.
bool value_has_type(const Value& v, Type t);

}  // namespace rwpe
