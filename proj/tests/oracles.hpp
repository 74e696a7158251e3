#pragma once

// Brute-force helpers shared by the unit tests. Deliberately naive.

#include <cstdint>
#include <vector>

namespace test_oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline std::uint64_t phi(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 1; k <= n; ++k) c += gcd(k, n) == 1;
  return c;
}

// psi(n) = n * prod (1 + 1/p): sum of n/d over squarefree divisors d.
inline std::uint64_t psi(std::uint64_t n) {
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool squarefree = true;
    for (std::uint64_t q = 2; q * q <= d; ++q) squarefree &= d % (q * q) != 0;
    if (squarefree) s += n / d;
  }
  return s;
}

}  // namespace test_oracle
