// Brute-force evaluation straight from the definitions. Nothing here may use
// the sieve, the factoring backend or the closed forms in arithfun.cpp.

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "arithdyn/arithfun.hpp"
#include "arithdyn/config.hpp"

namespace arithdyn {

namespace {

// (prime, exponent) by trial division.
std::vector<std::pair<std::uint64_t, unsigned>> trial_factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

BigInt power(std::uint64_t b, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= b;
  return r;
}

// #{(s_1..s_k) in [1,n]^k : gcd(s_1,..,s_k,n) = 1}, tracking the running gcd
// with n as the state (it is always a divisor of n).
BigInt jordan_count(std::uint64_t n, unsigned k) {
  std::vector<std::uint64_t> divs;
  for (std::uint64_t s = 1; s <= n; ++s) {
    if (n % s == 0) divs.push_back(s);
  }
  const double work = static_cast<double>(k) * static_cast<double>(divs.size()) * static_cast<double>(n);
  if (work > static_cast<double>(limits().oracle_budget))
    throw BudgetExceeded("oracle J_" + std::to_string(k) + "(" + std::to_string(n) + ") exceeds the oracle budget");
  std::map<std::uint64_t, BigInt> states{{n, 1}};
  for (unsigned i = 0; i < k; ++i) {
    std::map<std::uint64_t, BigInt> next;
    for (const auto& [g, ways] : states) {
      for (std::uint64_t s = 1; s <= n; ++s) next[std::gcd(g, s)] += ways;
    }
    states = std::move(next);
  }
  auto it = states.find(1);
  return it == states.end() ? BigInt(0) : it->second;
}

// Ordered l-tuples of naturals with product n.
BigInt ordered_factorizations(std::uint64_t n, unsigned l) {
  if (l == 1) return 1;
  BigInt total = 0;
  for (std::uint64_t s = 1; s <= n; ++s) {
    if (n % s == 0) total += ordered_factorizations(n / s, l - 1);
  }
  return total;
}

}  // namespace

BigInt eval_oracle(const FunctionId& f, std::uint64_t n) {
  validate(f);
  if (n == 0) throw std::invalid_argument("oracle: n must be >= 1");
  if (f.family == Family::Jordan) return jordan_count(n, f.param);
  if (n > limits().oracle_n_max)
    throw BudgetExceeded("oracle: n = " + std::to_string(n) + " exceeds the oracle bound");

  const auto fac = trial_factor(n);
  switch (f.family) {
    case Family::GeneralizedPsi: {
      // n^k * prod (1 + 1/p^k), dividing out p^k before multiplying keeps it integral
      BigInt v = power(n, f.param);
      for (const auto& [p, a] : fac) {
        const BigInt pk = power(p, f.param);
        v = v / pk * (pk + 1);
      }
      return v;
    }
    case Family::UnitaryTotient: {
      BigInt v = 1;
      for (const auto& [p, a] : fac) v *= power(p, a) - 1;
      return v;
    }
    case Family::BigOmega:
    case Family::SmallOmega: {
      if (n == 1) return 1;  // every function maps 1 to 1
      BigInt v = 0;
      for (const auto& [p, a] : fac) v += f.family == Family::BigOmega ? a : 1;
      return v;
    }
    case Family::DivisorCount:
      return ordered_factorizations(n, f.param);
    case Family::SigmaPower: {
      BigInt v = 0;
      for (std::uint64_t s = 1; s <= n; ++s) {
        if (n % s == 0) v += power(s, f.param);
      }
      return v;
    }
    default:
      break;
  }
  throw std::logic_error("unreachable");
}

}  // namespace arithdyn
