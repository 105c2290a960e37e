#include "rwpe/bounds.hpp"

#include <algorithm>

#include "rwpe/errors.hpp"

namespace rwpe {

AbstractValue AbstractValue::interval(Int lo, Int hi) {
  AbstractValue v;
  if (!(lo < hi)) throw std::invalid_argument("empty interval");
  v.kind_ = Kind::Interval;
  v.interval_ = {std::move(lo), std::move(hi)};
  return v;
}

struct AbstractValue::PairData {
  AbstractValue first;
  AbstractValue second;
};

const AbstractValue& AbstractValue::first() const { return pair_->first; }
const AbstractValue& AbstractValue::second() const { return pair_->second; }

AbstractValue AbstractValue::pair(AbstractValue first, AbstractValue second) {
  AbstractValue v;
  v.kind_ = Kind::Pair;
  v.pair_ = std::make_shared<const PairData>(PairData{std::move(first), std::move(second)});
  return v;
}

bool operator==(const AbstractValue& a, const AbstractValue& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case AbstractValue::Kind::Unknown: return true;
    case AbstractValue::Kind::Interval: return a.interval_ == b.interval_;
    case AbstractValue::Kind::Pair: return a.first() == b.first() && a.second() == b.second();
  }
  return false;
}

std::string to_string(const AbstractValue& v) {
  if (v.is_unknown()) return "unknown";
  if (v.is_pair()) return "(" + to_string(v.first()) + ", " + to_string(v.second()) + ")";
  return "[" + to_string(v.as_interval().lo) + ", " + to_string(v.as_interval().hi) + ")";
}

namespace {

/// Interval from inclusive extremes.
AbstractValue from_extremes(const std::vector<Int>& candidates) {
  auto [mn, mx] = std::minmax_element(candidates.begin(), candidates.end());
  return AbstractValue::interval(*mn, *mx + 1);
}

AbstractValue carry_add(const Interval& a, const Interval& b) {
  const Int lo = a.lo + b.lo;
  const Int max = (a.hi - 1) + (b.hi - 1);
  const Int& m = two_pow_64();
  const Int carry_lo = floor_div(lo, m);
  const Int carry_hi = floor_div(max, m);
  AbstractValue carry = AbstractValue::interval(carry_lo, carry_hi + 1);
  AbstractValue low = carry_lo == carry_hi ? AbstractValue::interval(floor_mod(lo, m), floor_mod(max, m) + 1)
                                           : AbstractValue::interval(0, m);
  return AbstractValue::pair(std::move(carry), std::move(low));
}

}  // namespace

AbstractValue interval_op(const Ident& op, const std::vector<AbstractValue>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw UnsupportedOp("wrong number of arguments for " + to_string(op));
  };
  auto all_intervals = [&] {
    return std::all_of(args.begin(), args.end(), [](const AbstractValue& v) { return v.is_interval(); });
  };
  switch (op.tag()) {
    case IdentTag::IntLit:
      need(0);
      return AbstractValue::singleton(op.int_value());
    case IdentTag::Clip:
      need(1);
      return AbstractValue::interval(op.clip_lo(), op.clip_hi());
    case IdentTag::PairMk:
      need(2);
      return AbstractValue::pair(args[0], args[1]);
    case IdentTag::Fst:
    case IdentTag::Snd:
      need(1);
      if (!args[0].is_pair()) return {};
      return op.tag() == IdentTag::Fst ? args[0].first() : args[0].second();
    case IdentTag::Add:
    case IdentTag::Sub:
    case IdentTag::Mul:
    case IdentTag::Shr:
    case IdentTag::AddWithCarry64: {
      need(2);
      if (op.tag() == IdentTag::Mul) {
        const AbstractValue zero = AbstractValue::singleton(0);
        if (args[0] == zero || args[1] == zero) return zero;
      }
      if (!all_intervals()) return {};
      const Interval& a = args[0].as_interval();
      const Interval& b = args[1].as_interval();
      const Int amax = a.hi - 1;
      const Int bmax = b.hi - 1;
      switch (op.tag()) {
        case IdentTag::Add: return AbstractValue::interval(a.lo + b.lo, amax + bmax + 1);
        case IdentTag::Sub: return AbstractValue::interval(a.lo - bmax, amax - b.lo + 1);
        case IdentTag::Mul: return from_extremes({a.lo * b.lo, a.lo * bmax, amax * b.lo, amax * bmax});
        case IdentTag::Shr: {
          if (b.lo < 0 || bmax > kMaxExponent) return {};
          return from_extremes({*shift_right(a.lo, b.lo), *shift_right(a.lo, bmax), *shift_right(amax, b.lo),
                                *shift_right(amax, bmax)});
        }
        default: return carry_add(a, b);
      }
    }
    default:
      throw UnsupportedOp("no interval transfer function for " + to_string(op));
  }
}

namespace {

class Analyzer {
 public:
  explicit Analyzer(const BoundsEnv& input) : env_(input) {}

  BoundsResult run(const Expr& e) {
    BoundsResult out;
    out.clipped = peel(e);
    out.bounds = std::move(env_);
    out.result = std::move(result_);
    return out;
  }

 private:
  Expr peel(const Expr& e) {
    if (e->kind() == ExprKind::Abs) {
      if (!e->var_type()->is_base()) throw NonStraightlineInput("higher-order parameter");
      if (!env_.count(e->var())) env_[e->var()] = AbstractValue();
      return mk_abs(e->var(), e->var_type(), peel(e->body()), e->hint_ptr());
    }
    return chain(e);
  }

  Expr chain(const Expr& root) {
    struct Step {
      VarId id;
      Expr rhs;
      const std::string* hint;
    };
    std::vector<Step> steps;
    const Expr* e = &root;
    while ((*e)->kind() == ExprKind::LetIn) {
      const ExprNode& let = **e;
      if (!let.rhs()->type()->is_base()) throw NonStraightlineInput("let binds a function");
      AbstractValue v;
      Expr rhs = expression(let.rhs(), v);
      env_[let.var()] = std::move(v);
      steps.push_back({let.var(), std::move(rhs), let.hint_ptr()});
      e = &let.body();
    }
    if (!(*e)->type()->is_base()) throw NonStraightlineInput("result is a function");
    Expr body = expression(*e, result_);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) body = mk_let(it->id, it->rhs, std::move(body), it->hint);
    return body;
  }

  Expr expression(const Expr& e, AbstractValue& value) {
    switch (e->kind()) {
      case ExprKind::Var: {
        auto it = env_.find(e->var());
        value = it == env_.end() ? AbstractValue() : it->second;
        if (value.is_interval() && e->type() == int_type()) {
          return mk_clip(value.as_interval().lo, value.as_interval().hi, e);
        }
        return e;
      }
      case ExprKind::Ident: {
        try {
          value = interval_op(e->ident(), {});
        } catch (const UnsupportedOp&) {
          value = AbstractValue();
        }
        return e;
      }
      case ExprKind::App: {
        Spine sp = app_spine(e);
        if (sp.head->kind() != ExprKind::Ident) throw NonStraightlineInput("application of a non-identifier");
        const Ident& id = sp.head->ident();
        std::vector<AbstractValue> args(sp.args.size());
        Expr out = mk_ident(id);
        for (std::size_t i = 0; i < sp.args.size(); ++i) out = mk_app(std::move(out), expression(sp.args[i], args[i]));
        try {
          value = sp.args.size() == arity(id.type()) ? interval_op(id, args) : AbstractValue();
        } catch (const UnsupportedOp&) {
          value = AbstractValue();
        }
        return out;
      }
      case ExprKind::Abs: throw NonStraightlineInput("lambda inside straightline code");
      case ExprKind::LetIn: throw NonStraightlineInput("nested let in a right-hand side");
    }
    throw NonStraightlineInput("unexpected node");
  }

  BoundsEnv env_;
  AbstractValue result_;
};

}  // namespace

BoundsResult analyze_bounds(const Expr& e, const BoundsEnv& input_bounds) { return Analyzer(input_bounds).run(e); }

Expr analyze_and_clip(const Expr& e, const BoundsEnv& input_bounds) { return analyze_bounds(e, input_bounds).clipped; }

}  // namespace rwpe
