#include "rwpe/int.hpp"

#include <cctype>

namespace rwpe {

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncates toward zero
  Int r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

std::optional<Int> shift_right(const Int& a, const Int& s) {
  if (s > kMaxExponent || s < -Int(kMaxExponent)) return std::nullopt;
  const auto amount = static_cast<unsigned>(boost::multiprecision::abs(s));
  Int scale = Int(1) << amount;
  if (s >= 0) return floor_div(a, scale);
  return a * scale;
}

std::optional<Int> checked_pow(const Int& base, const Int& exponent) {
  if (exponent < 0 || exponent > kMaxExponent) return std::nullopt;
  return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

std::optional<Int> log2_floor(const Int& n) {
  if (n <= 0) return std::nullopt;
  return Int(boost::multiprecision::msb(n));
}

const Int& two_pow_64() {
  static const Int value = Int(1) << 64;
  return value;
}

std::string to_string(const Int& value) { return value.str(); }

std::optional<Int> parse_int(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t start = (text[0] == '-') ? 1 : 0;
  if (start == text.size()) return std::nullopt;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
  }
  return Int(std::string(text));
}

}  // namespace rwpe
