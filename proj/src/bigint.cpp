#include "arithdyn/bigint.hpp"

#include <stdexcept>

namespace arithdyn {

std::size_t bit_length(const BigInt& n) {
  if (n.is_zero()) return 0;
  return boost::multiprecision::msb(n) + 1;
}

BigInt from_u128(u128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  BigInt lo = static_cast<std::uint64_t>(v);
  return (hi << 64) | lo;
}

std::optional<u128> to_u128(const BigInt& n) {
  if (n.sign() < 0 || bit_length(n) > 128) return std::nullopt;
  const auto lo = static_cast<std::uint64_t>(n & BigInt(~std::uint64_t{0}));
  const auto hi = static_cast<std::uint64_t>(n >> 64);
  return (static_cast<u128>(hi) << 64) | lo;
}

std::optional<std::uint64_t> to_u64(const BigInt& n) {
  if (n.sign() < 0 || bit_length(n) > 64) return std::nullopt;
  return static_cast<std::uint64_t>(n);
}

std::string to_string(const BigInt& n) { return n.str(); }

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

BigInt parse_natural(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a natural number: " + text);
  }
  return BigInt(text);
}

BigInt ipow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1) result *= b;
    exp >>= 1;
    if (exp != 0) b *= b;
  }
  return result;
}

}  // namespace arithdyn
