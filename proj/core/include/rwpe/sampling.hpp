#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>
#include <utility>

#include "rwpe/denote.hpp"
#include "rwpe/expr.hpp"
#include "rwpe/syntax.hpp"
#include "rwpe/value.hpp"

namespace rwpe {

/// Random-value generation used to compare terms through the interpreter.
struct SampleOptions {
  Int int_lo = -1000;  // inclusive
  Int int_hi = 1000;   // exclusive
  int max_list_length = 4;
};

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi); lo < hi.
Int random_int(Rng& rng, const Int& lo, const Int& hi);

/// A random value of type `t`. Functions are deterministic: integer-valued
/// ones compute an affine function of their integer arguments, others
/// return a fixed random result.
Value random_value(Type t, Rng& rng, const SampleOptions& options = {});

/// Integer ranges [lo, hi) for specific variables.
using IntRanges = std::unordered_map<VarId, std::pair<Int, Int>>;

/// Random values for the free variables of `e`.
ValueEnv random_valuation(const Expr& e, Rng& rng, const IntRanges& ranges = {}, const SampleOptions& options = {});

/// Random implementations for declared opaque symbols.
OpaqueImpls random_opaques(const SymbolTable& symbols, Rng& rng, const SampleOptions& options = {});

/// Compares two values of type `t`; functions are compared on `samples`
/// random arguments.
bool values_agree(const Value& a, const Value& b, Type t, Rng& rng, int samples = 3,
                  const SampleOptions& options = {});

}  // namespace rwpe
