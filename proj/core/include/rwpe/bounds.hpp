#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rwpe/expr.hpp"

namespace rwpe {

/// Integers n with lo <= n < hi; lo < hi.
struct Interval {
  Int lo;
  Int hi;

  bool contains(const Int& n) const { return lo <= n && n < hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Interval lattice extended with Unknown (top) and pairs.
class AbstractValue {
 public:
  AbstractValue() = default;  // Unknown
  static AbstractValue unknown() { return {}; }
  static AbstractValue interval(Int lo, Int hi);
  static AbstractValue singleton(const Int& n) { return interval(n, n + 1); }
  static AbstractValue pair(AbstractValue first, AbstractValue second);

  bool is_unknown() const noexcept { return kind_ == Kind::Unknown; }
  bool is_interval() const noexcept { return kind_ == Kind::Interval; }
  bool is_pair() const noexcept { return kind_ == Kind::Pair; }
  const Interval& as_interval() const { return interval_; }
  const AbstractValue& first() const;
  const AbstractValue& second() const;

  friend bool operator==(const AbstractValue& a, const AbstractValue& b);

 private:
  enum class Kind { Unknown, Interval, Pair };
  struct PairData;
  Kind kind_ = Kind::Unknown;
  Interval interval_;
  std::shared_ptr<const PairData> pair_;
};

std::string to_string(const AbstractValue& v);

using BoundsEnv = std::unordered_map<VarId, AbstractValue>;

/// Sound transfer function of an identifier over abstract arguments.
/// Supports Add, Sub, Mul, Shr, AddWithCarry64, Clip, Fst, Snd, PairMk and
/// literals; throws UnsupportedOp for any other identifier.
AbstractValue interval_op(const Ident& op, const std::vector<AbstractValue>& args);

struct BoundsResult {
  /// The input with clips inserted at every integer variable occurrence
  /// whose interval is known.
  Expr clipped;
  /// Inferred value of every let-bound variable and declared parameter.
  BoundsEnv bounds;
  /// Abstract value of the final expression.
  AbstractValue result;
};

/// Analyzes straightline code: top-level lambdas, then a let chain whose
/// right-hand sides are base-typed applications of identifiers to variables
/// and literals. Identifiers outside the arithmetic fragment yield Unknown.
/// Throws NonStraightlineInput for any other shape.
BoundsResult analyze_bounds(const Expr& e, const BoundsEnv& input_bounds);

/// `analyze_bounds(e, input_bounds).clipped`.
Expr analyze_and_clip(const Expr& e, const BoundsEnv& input_bounds);

}  // namespace rwpe
