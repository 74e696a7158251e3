#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/bigint.hpp"
#include "arithdyn/config.hpp"
#include "arithdyn/symnat.hpp"

namespace arithdyn {

struct PrimePower {
  BigInt prime;
  SymNat exponent;
};

/// The product q_first * q_{first+1} * ... * q_last of consecutive primes,
/// addressed by index (q_1 = 2).
struct PrimeRun {
  SymNat first;
  SymNat last;
};

/// A positive integer in factored form. Explicit prime powers carry exact
/// (possibly symbolic) exponents; runs of consecutive primes represent
/// primorial-like factors far too long to list.
///
/// Construction normalizes: short concrete runs are expanded, explicit
/// primes adjacent to a run with exponent 1 are absorbed into it, adjacent
/// runs are merged, and everything is sorted. The number 1 is the empty
/// factorization.
class FactoredNatural {
 public:
  FactoredNatural() = default;
  explicit FactoredNatural(std::vector<PrimePower> powers, std::vector<PrimeRun> runs = {});

  static FactoredNatural prime_power(const BigInt& p, SymNat exponent);
  static FactoredNatural prime_run(SymNat first, SymNat last);

  const std::vector<PrimePower>& powers() const { return powers_; }
  const std::vector<PrimeRun>& runs() const { return runs_; }

  bool is_one() const { return powers_.empty() && runs_.empty(); }
  bool has_runs() const { return !runs_.empty(); }
  /// No symbolic exponent or run endpoint.
  bool is_concrete() const;

  /// Explicit value, or nullopt exactly when the value is >= 2^bit_budget.
  /// Throws BudgetExceeded if a run needs primes beyond the prime index budget.
  std::optional<BigInt> to_integer(std::size_t bit_budget) const;
  std::optional<BigInt> to_integer() const { return to_integer(limits().bit_budget); }

  /// Sum of all exponents (run lengths count once per prime).
  std::optional<SymNat> big_omega() const;
  /// Number of distinct prime factors.
  std::optional<SymNat> small_omega() const;
  /// Exponent of p in this number (0 when absent); nullopt when undecidable.
  std::optional<SymNat> valuation(const BigInt& p) const;
  std::optional<BigInt> least_prime() const;

  /// Canonical text, e.g. "2^5 * 3" or "3 * q[3..x+1]".
  std::string to_string() const;

  friend bool identical(const FactoredNatural& a, const FactoredNatural& b);
  friend Truth equal(const FactoredNatural& a, const FactoredNatural& b);

 private:
  void normalize();

  std::vector<PrimePower> powers_;
  std::vector<PrimeRun> runs_;
};

bool identical(const FactoredNatural& a, const FactoredNatural& b);
/// Numeric equality: yes/no when decided exactly, unknown otherwise.
Truth equal(const FactoredNatural& a, const FactoredNatural& b);

/// Complete factorization of 1 <= n < 2^128.
FactoredNatural factorize(const BigInt& n);
FactoredNatural factorize(std::uint64_t n);

FactoredNatural multiply(const FactoredNatural& a, const FactoredNatural& b);

}  // namespace arithdyn
