#include "rwpe/sampling.hpp"

#include "rwpe/term_ops.hpp"

namespace rwpe {

Int random_int(Rng& rng, const Int& lo, const Int& hi) {
  const Int span = hi - lo;
  Int r = 0;
  const unsigned chunks = static_cast<unsigned>(boost::multiprecision::msb(span) / 64 + 2);
  for (unsigned k = 0; k < chunks; ++k) r = (r << 64) + Int(rng());
  return lo + r % span;
}

namespace {

Value random_function(Type t, Rng& rng, const SampleOptions& options) {
  const Type dom = t->domain();
  const Type cod = t->codomain();
  if (dom == int_type() && cod == int_type()) {
    const Int a = random_int(rng, -3, 4);
    const Int b = random_int(rng, -10, 11);
    return Value::function([a, b](const Value& x) { return Value::integer(a * x.as_int() + b); });
  }
  if (dom == int_type() && cod == arrow_type(int_type(), int_type())) {
    const Int a = random_int(rng, -3, 4);
    const Int b = random_int(rng, -3, 4);
    return Value::function([a, b](const Value& x) {
      const Int xa = x.as_int() * a;
      return Value::function([xa, b](const Value& y) { return Value::integer(xa + b * y.as_int() + 1); });
    });
  }
  const Value fixed = random_value(cod, rng, options);
  return Value::function([fixed](const Value&) { return fixed; });
}

}  // namespace

Value random_value(Type t, Rng& rng, const SampleOptions& options) {
  switch (t->kind) {
    case TypeKind::Int: return Value::integer(random_int(rng, options.int_lo, options.int_hi));
    case TypeKind::Bool: return Value::boolean(rng() % 2 == 0);
    case TypeKind::Unit: return Value::unit();
    case TypeKind::List: {
      const int len = static_cast<int>(rng() % static_cast<std::uint64_t>(options.max_list_length + 1));
      std::vector<Value> elems;
      for (int i = 0; i < len; ++i) elems.push_back(random_value(t->first, rng, options));
      return Value::list_of(elems);
    }
    case TypeKind::Pair: {
      Value a = random_value(t->first, rng, options);
      return Value::pair(std::move(a), random_value(t->second, rng, options));
    }
    case TypeKind::Arrow: return random_function(t, rng, options);
  }
  return Value::unit();
}

ValueEnv random_valuation(const Expr& e, Rng& rng, const IntRanges& ranges, const SampleOptions& options) {
  ValueEnv env;
  for (const FreeVar& fv : free_vars(e)) {
    if (auto it = ranges.find(fv.id); it != ranges.end() && fv.type == int_type()) {
      env.emplace(fv.id, Value::integer(random_int(rng, it->second.first, it->second.second)));
    } else {
      env.emplace(fv.id, random_value(fv.type, rng, options));
    }
  }
  return env;
}

OpaqueImpls random_opaques(const SymbolTable& symbols, Rng& rng, const SampleOptions& options) {
  OpaqueImpls impls;
  for (const auto& [name, id] : symbols.opaques) impls.emplace(name, random_value(id.type(), rng, options));
  return impls;
}

bool values_agree(const Value& a, const Value& b, Type t, Rng& rng, int samples, const SampleOptions& options) {
  if (!t->is_arrow()) return values_equal(a, b);
  for (int k = 0; k < samples; ++k) {
    const Value x = random_value(t->domain(), rng, options);
    if (!values_agree(a(x), b(x), t->codomain(), rng, samples, options)) return false;
  }
  return true;
}

}  // namespace rwpe
