#pragma once

#include <cstdint>
#include <mutex>
#include <utility>
#include <vector>

#include "arithdyn/bigint.hpp"

namespace arithdyn {

/// Shared prime tables: a smallest-prime-factor sieve up to
/// limits().sieve_bound (built on first use) and an ordered prime list that
/// grows on demand for nth_prime / prime_index queries.
class PrimeTable {
 public:
  static PrimeTable& instance();

  std::uint64_t sieve_bound() const { return bound_; }

  /// Smallest prime factor of n, for 2 <= n <= sieve_bound().
  std::uint32_t smallest_factor(std::uint64_t n) const;

  /// q_i with q_1 = 2. Throws BudgetExceeded past limits().prime_index_budget.
  std::uint64_t nth_prime(std::uint64_t i);

  /// Index of the prime p (q_{prime_index(p)} = p). Throws std::invalid_argument
  /// when p is not prime.
  std::uint64_t prime_index(std::uint64_t p);

  /// Number of primes <= x.
  std::uint64_t prime_pi(std::uint64_t x);

  /// All primes <= x, ascending.
  std::vector<std::uint64_t> primes_up_to(std::uint64_t x);

 private:
  PrimeTable();
  void ensure_spf() const;
  void extend_to(std::uint64_t value_limit);  // caller holds mutex_

  std::uint64_t bound_;
  mutable std::once_flag spf_once_;
  mutable std::vector<std::uint32_t> spf_;

  std::mutex mutex_;
  std::uint64_t sieved_to_ = 0;
  std::vector<std::uint32_t> primes_;
};

/// Deterministic Miller-Rabin for n < 3.3e24; beyond that the same test with
/// additional prime bases.
bool is_prime(u128 n);
bool is_prime(const BigInt& n);

BigInt nth_prime(const BigInt& index);
BigInt prime_index(const BigInt& p);

/// Raw factorization of a 128-bit natural: ascending (prime, exponent) pairs.
/// Small inputs use the sieve; larger ones trial division, Miller-Rabin and
/// Pollard-Brent rho.
std::vector<std::pair<u128, unsigned>> factor_u128(u128 n);

}  // namespace arithdyn
