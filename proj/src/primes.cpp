#include "arithdyn/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "arithdyn/config.hpp"

namespace arithdyn {

namespace {

using boost::multiprecision::uint256_t;

u128 mulmod(u128 a, u128 b, u128 m) {
  if ((m >> 64) == 0) return (a * b) % m;
  uint256_t prod = uint256_t(from_u128(a)) * uint256_t(from_u128(b));
  prod %= uint256_t(from_u128(m));
  return *to_u128(BigInt(prod));
}

u128 powmod(u128 base, u128 exp, u128 m) {
  u128 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr std::array<std::uint32_t, 25> kBases = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Bases 2..41 are deterministic below this bound (Sorenson-Webster).
const u128 kDeterministicBound = [] {
  u128 v = 0;
  for (char c : std::string("3317044064679887385961981")) v = v * 10 + static_cast<unsigned>(c - '0');
  return v;
}();

bool miller_rabin(u128 n) {
  u128 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  const std::size_t nbases = n < kDeterministicBound ? 13 : kBases.size();
  for (std::size_t i = 0; i < nbases; ++i) {
    const u128 a = kBases[i];
    if (a % n == 0) continue;
    u128 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u128 pollard_brent(u128 n) {
  if ((n & 1) == 0) return 2;
  for (u128 c = 1;; ++c) {
    u128 y = 2, g = 1, q = 1, x = 0, ys = 0;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    auto f = [&](u128 v) {
      v = mulmod(v, v, n);
      return v >= n - c ? v - (n - c) : v + c;
    };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd128(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd128(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(u128 n, std::vector<u128>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  auto& table = PrimeTable::instance();
  if (n <= table.sieve_bound()) {
    auto v = static_cast<std::uint64_t>(n);
    while (v > 1) {
      const std::uint32_t p = table.smallest_factor(v);
      out.push_back(p);
      v /= p;
    }
    return;
  }
  const u128 d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

PrimeTable& PrimeTable::instance() {
  static PrimeTable table;
  return table;
}

PrimeTable::PrimeTable() : bound_(std::max<std::uint64_t>(limits().sieve_bound, 100)) {}

void PrimeTable::ensure_spf() const {
  std::call_once(spf_once_, [this] {
    spf_.assign(bound_ + 1, 0);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= bound_; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = static_cast<std::uint32_t>(i);
        primes.push_back(static_cast<std::uint32_t>(i));
      }
      for (std::uint32_t p : primes) {
        const std::uint64_t m = p * i;
        if (p > spf_[i] || m > bound_) break;
        spf_[m] = p;
      }
    }
  });
}

std::uint32_t PrimeTable::smallest_factor(std::uint64_t n) const {
  if (n < 2 || n > bound_) throw std::out_of_range("smallest_factor: outside sieve range");
  ensure_spf();
  return spf_[n];
}

void PrimeTable::extend_to(std::uint64_t value_limit) {
  if (value_limit <= sieved_to_) return;
  std::uint64_t target = std::max<std::uint64_t>({value_limit, 2 * sieved_to_, 1u << 16});
  std::vector<bool> composite(target + 1, false);
  primes_.clear();
  for (std::uint64_t i = 2; i <= target; ++i) {
    if (composite[i]) continue;
    primes_.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= target; j += i) composite[j] = true;
  }
  sieved_to_ = target;
}

std::uint64_t PrimeTable::nth_prime(std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("nth_prime: index must be >= 1");
  if (i > limits().prime_index_budget)
    throw BudgetExceeded("nth_prime: index " + std::to_string(i) + " exceeds prime index budget");
  std::lock_guard lock(mutex_);
  while (primes_.size() < i) {
    const double x = static_cast<double>(std::max<std::uint64_t>(i, 6));
    const auto estimate = static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 16;
    extend_to(std::max(estimate, sieved_to_ + 1));
  }
  return primes_[i - 1];
}

std::uint64_t PrimeTable::prime_index(std::uint64_t p) {
  if (!is_prime(static_cast<u128>(p))) throw std::invalid_argument("prime_index: " + std::to_string(p) + " is not prime");
  const std::uint64_t reach = [&] {
    // the largest prime nth_prime may return
    const double x = static_cast<double>(std::max<std::uint64_t>(limits().prime_index_budget, 6));
    return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 16;
  }();
  if (p > reach) throw BudgetExceeded("prime_index: prime exceeds prime index budget");
  std::lock_guard lock(mutex_);
  extend_to(p);
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  const auto index = static_cast<std::uint64_t>(it - primes_.begin()) + 1;
  if (index > limits().prime_index_budget) throw BudgetExceeded("prime_index: exceeds prime index budget");
  return index;
}

std::uint64_t PrimeTable::prime_pi(std::uint64_t x) {
  if (x < 2) return 0;
  std::lock_guard lock(mutex_);
  extend_to(x);
  return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

std::vector<std::uint64_t> PrimeTable::primes_up_to(std::uint64_t x) {
  std::lock_guard lock(mutex_);
  extend_to(x);
  std::vector<std::uint64_t> out;
  for (std::uint32_t p : primes_) {
    if (p > x) break;
    out.push_back(p);
  }
  return out;
}

bool is_prime(u128 n) {
  if (n < 2) return false;
  for (std::uint32_t p : kBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  auto& table = PrimeTable::instance();
  if (n <= table.sieve_bound()) return table.smallest_factor(static_cast<std::uint64_t>(n)) == n;
  return miller_rabin(n);
}

bool is_prime(const BigInt& n) {
  auto v = to_u128(n);
  if (!v) throw BudgetExceeded("is_prime: argument exceeds 128 bits");
  return is_prime(*v);
}

BigInt nth_prime(const BigInt& index) {
  auto i = to_u64(index);
  if (!i || *i > limits().prime_index_budget)
    throw BudgetExceeded("nth_prime: index " + index.str() + " exceeds prime index budget");
  return PrimeTable::instance().nth_prime(*i);
}

BigInt prime_index(const BigInt& p) {
  auto v = to_u64(p);
  if (!v) {
    if (!is_prime(p)) throw std::invalid_argument("prime_index: " + p.str() + " is not prime");
    throw BudgetExceeded("prime_index: prime exceeds prime index budget");
  }
  return PrimeTable::instance().prime_index(*v);
}

std::vector<std::pair<u128, unsigned>> factor_u128(u128 n) {
  if (n == 0) throw std::invalid_argument("factorize: 0 has no factorization");
  std::vector<u128> primes;
  auto& table = PrimeTable::instance();
  if (n <= table.sieve_bound()) {
    auto v = static_cast<std::uint64_t>(n);
    while (v > 1) {
      const std::uint32_t p = table.smallest_factor(v);
      primes.push_back(p);
      v /= p;
    }
  } else {
    for (std::uint32_t p = 2; p < 1000 && static_cast<u128>(p) * p <= n; p += (p == 2 ? 1 : 2)) {
      while (n % p == 0) {
        primes.push_back(p);
        n /= p;
      }
    }
    factor_rec(n, primes);
  }
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u128, unsigned>> out;
  for (u128 p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

}  // namespace arithdyn
