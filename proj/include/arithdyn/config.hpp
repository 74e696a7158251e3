#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace arithdyn {

/// Per-scheme depth caps for the built-in orbit/anti-orbit families.
struct DepthCaps {
  std::uint64_t omega_anti = 5;
  std::uint64_t d_anti = 5;
  std::uint64_t small_omega_anti = 6;
  std::uint64_t other = 10'000;
};

/// Process-wide resource limits. Set once at startup (before any sieve is
/// built); read-only afterwards.
struct Limits {
  std::uint64_t sieve_bound = 10'000'000;        // smallest-prime-factor table
  std::uint64_t prime_index_budget = 10'000'000; // largest i accepted by nth_prime
  std::uint64_t oracle_budget = 100'000'000;     // work units for eval_oracle
  std::uint64_t oracle_n_max = 10'000;
  std::size_t bit_budget = std::size_t{1} << 20; // largest explicit integer, in bits
  std::uint64_t run_expand_limit = std::uint64_t{1} << 20;
  std::uint64_t inverse_phi_max = 1'000'000;
  unsigned identity_k_max = 3;
  DepthCaps depth_caps;
};

const Limits& limits();
void set_limits(const Limits& l);

/// A computation needed more than the configured budget allows.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Preimage sets of this function are infinite, so no complete enumeration exists.
class NotFiniteFibre : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace arithdyn
