#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace arithdyn {

/// Arbitrary-precision signed integer. Naturals are non-negative BigInts.
using BigInt = boost::multiprecision::cpp_int;

using u128 = unsigned __int128;

/// Number of significant bits; 0 for 0. Requires n >= 0.
std::size_t bit_length(const BigInt& n);

BigInt from_u128(u128 v);
std::optional<u128> to_u128(const BigInt& n);
std::optional<std::uint64_t> to_u64(const BigInt& n);

std::string to_string(const BigInt& n);
std::string to_string(u128 v);

/// Parses a non-negative decimal integer; throws std::invalid_argument.
BigInt parse_natural(const std::string& text);

/// base^exp for small exponents.
BigInt ipow(const BigInt& base, std::uint64_t exp);

}  // namespace arithdyn
