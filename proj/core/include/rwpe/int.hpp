#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rwpe {

/// Arbitrary-precision integer used for literals, interpreter values and
/// interval endpoints.
using Int = boost::multiprecision::cpp_int;

/// Largest exponent / shift amount the interpreter will materialize.
inline constexpr unsigned kMaxExponent = 1u << 16;

Int floor_div(const Int& a, const Int& b);
Int floor_mod(const Int& a, const Int& b);

/// a >> s with floor semantics; a negative shift amount shifts left.
/// Returns nullopt when |s| exceeds kMaxExponent.
std::optional<Int> shift_right(const Int& a, const Int& s);

/// a ^ e for e >= 0 (0 ^ 0 = 1). nullopt for negative or oversized exponents.
std::optional<Int> checked_pow(const Int& base, const Int& exponent);

/// floor(log2 n) for n > 0, nullopt otherwise.
std::optional<Int> log2_floor(const Int& n);

/// 2^64, the modulus of the 64-bit carrying add.
const Int& two_pow_64();

std::string to_string(const Int& value);
std::optional<Int> parse_int(std::string_view text);

}  // namespace rwpe
