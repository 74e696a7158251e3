#include "arithdyn/factored.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "arithdyn/primes.hpp"

namespace arithdyn {

namespace {

bool is_unit_exponent(const SymNat& s) { return s.is_concrete() && s.offset() == 1; }

SymNat run_length(const PrimeRun& r) {
  auto diff = subtract(r.last, r.first);
  if (!diff) throw std::domain_error("prime run length is not representable");
  return *diff + 1;
}

BigInt product_of(std::vector<BigInt> xs) {
  if (xs.empty()) return 1;
  while (xs.size() > 1) {
    std::vector<BigInt> next;
    next.reserve((xs.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) next.push_back(xs[i] * xs[i + 1]);
    if (xs.size() % 2 == 1) next.push_back(std::move(xs.back()));
    xs = std::move(next);
  }
  return xs.front();
}

bool expandable(const PrimeRun& r) {
  if (!r.first.is_concrete() || !r.last.is_concrete()) return false;
  const BigInt len = r.last.offset() - r.first.offset() + 1;
  return len <= limits().run_expand_limit && r.last.offset() <= limits().prime_index_budget;
}

// Position of index i relative to run r: -1 below, 0 inside, +1 above, nullopt undecided.
std::optional<int> locate(const SymNat& i, const PrimeRun& r) {
  auto lo = compare(i, r.first);
  if (!lo) return std::nullopt;
  if (*lo < 0) return -1;
  auto hi = compare(i, r.last);
  if (!hi) return std::nullopt;
  return *hi > 0 ? 1 : 0;
}

std::string power_text(const PrimePower& pw) {
  std::string s = pw.prime.str();
  if (is_unit_exponent(pw.exponent)) return s;
  const std::string e = pw.exponent.to_string();
  const bool simple = pw.exponent.is_concrete() && e.find_first_not_of("0123456789") == std::string::npos;
  return s + "^" + (simple ? e : "(" + e + ")");
}

}  // namespace

FactoredNatural::FactoredNatural(std::vector<PrimePower> powers, std::vector<PrimeRun> runs)
    : powers_(std::move(powers)), runs_(std::move(runs)) {
  for (const auto& pw : powers_) {
    if (pw.prime < 2 || !is_prime(pw.prime))
      throw std::invalid_argument("factor " + pw.prime.str() + " is not prime");
    auto c = compare(pw.exponent, SymNat(1));
    if (!c || *c < 0) throw std::invalid_argument("exponents must be >= 1 (got " + pw.exponent.to_string() + ")");
  }
  for (const auto& r : runs_) {
    auto lo = compare(r.first, SymNat(1));
    auto order = compare(r.first, r.last);
    if (!lo || *lo < 0) throw std::invalid_argument("prime run indices start at 1");
    if (!order || *order > 0) throw std::invalid_argument("prime run must satisfy first <= last");
  }
  normalize();
}

FactoredNatural FactoredNatural::prime_power(const BigInt& p, SymNat exponent) {
  return FactoredNatural({PrimePower{p, std::move(exponent)}});
}

FactoredNatural FactoredNatural::prime_run(SymNat first, SymNat last) {
  return FactoredNatural({}, {PrimeRun{std::move(first), std::move(last)}});
}

void FactoredNatural::normalize() {
  // Short concrete runs become explicit primes.
  std::vector<PrimeRun> kept;
  for (auto& r : runs_) {
    if (!expandable(r)) {
      kept.push_back(std::move(r));
      continue;
    }
    auto& table = PrimeTable::instance();
    const auto first = static_cast<std::uint64_t>(r.first.offset());
    const auto last = static_cast<std::uint64_t>(r.last.offset());
    for (std::uint64_t i = first; i <= last; ++i) powers_.push_back({BigInt(table.nth_prime(i)), SymNat(1)});
  }
  runs_ = std::move(kept);

  std::sort(powers_.begin(), powers_.end(), [](const auto& a, const auto& b) { return a.prime < b.prime; });
  std::vector<PrimePower> merged;
  for (auto& pw : powers_) {
    if (!merged.empty() && merged.back().prime == pw.prime) {
      auto sum = add(merged.back().exponent, pw.exponent);
      if (!sum) throw std::domain_error("cannot add exponents of " + pw.prime.str());
      merged.back().exponent = std::move(*sum);
    } else {
      merged.push_back(std::move(pw));
    }
  }
  powers_ = std::move(merged);
  if (runs_.empty()) return;

  std::sort(runs_.begin(), runs_.end(),
            [](const PrimeRun& a, const PrimeRun& b) { return compare_or_throw(a.first, b.first) < 0; });
  for (std::size_t i = 1; i < runs_.size(); ++i) {
    if (compare_or_throw(runs_[i - 1].last, runs_[i].first) >= 0)
      throw std::invalid_argument("overlapping prime runs are too long to expand");
  }

  // Index of every explicit prime, needed to relate it to the runs.
  std::vector<SymNat> index(powers_.size());
  for (std::size_t k = 0; k < powers_.size(); ++k) index[k] = SymNat(prime_index(powers_[k].prime));

  // An explicit prime inside a run: split the run around it.
  for (std::size_t k = 0; k < powers_.size(); ++k) {
    for (std::size_t j = 0; j < runs_.size(); ++j) {
      auto where = locate(index[k], runs_[j]);
      if (!where) throw std::domain_error("cannot place prime " + powers_[k].prime.str() + " relative to a run");
      if (*where != 0) continue;
      const PrimeRun r = runs_[j];
      runs_.erase(runs_.begin() + static_cast<std::ptrdiff_t>(j));
      if (compare_or_throw(r.first, index[k]) < 0) runs_.push_back({r.first, index[k] - 1});
      if (compare_or_throw(index[k], r.last) < 0) runs_.push_back({index[k] + 1, r.last});
      powers_[k].exponent = powers_[k].exponent + 1;
      normalize();
      return;
    }
  }

  // Absorb neighbouring exponent-1 primes and merge touching runs.
  std::map<BigInt, std::size_t> unit_primes;  // concrete index -> position in powers_
  for (std::size_t k = 0; k < powers_.size(); ++k) {
    if (is_unit_exponent(powers_[k].exponent)) unit_primes.emplace(index[k].offset(), k);
  }
  std::vector<bool> absorbed(powers_.size(), false);
  for (auto& r : runs_) {
    if (r.first.is_concrete()) {
      for (auto it = unit_primes.find(r.first.offset() - 1); it != unit_primes.end();
           it = unit_primes.find(r.first.offset() - 1)) {
        absorbed[it->second] = true;
        r.first = r.first - 1;
        unit_primes.erase(it);
      }
    }
    if (r.last.is_concrete()) {
      for (auto it = unit_primes.find(r.last.offset() + 1); it != unit_primes.end();
           it = unit_primes.find(r.last.offset() + 1)) {
        absorbed[it->second] = true;
        r.last = r.last + 1;
        unit_primes.erase(it);
      }
    }
  }
  std::vector<PrimePower> rest;
  for (std::size_t k = 0; k < powers_.size(); ++k) {
    if (!absorbed[k]) rest.push_back(std::move(powers_[k]));
  }
  powers_ = std::move(rest);

  std::vector<PrimeRun> joined;
  for (auto& r : runs_) {
    if (!joined.empty() && equal(joined.back().last + 1, r.first) == Truth::yes) {
      joined.back().last = std::move(r.last);
    } else {
      joined.push_back(std::move(r));
    }
  }
  runs_ = std::move(joined);
}

bool FactoredNatural::is_concrete() const {
  for (const auto& pw : powers_) {
    if (!pw.exponent.is_concrete()) return false;
  }
  for (const auto& r : runs_) {
    if (!r.first.is_concrete() || !r.last.is_concrete()) return false;
  }
  return true;
}

std::optional<BigInt> FactoredNatural::to_integer(std::size_t bit_budget) const {
  if (!is_concrete()) return std::nullopt;
  // value >= 2^floor_bits
  BigInt floor_bits = 0;
  for (const auto& pw : powers_) floor_bits += pw.exponent.offset() * (bit_length(pw.prime) - 1);
  for (const auto& r : runs_) floor_bits += r.last.offset() - r.first.offset() + 1;
  if (floor_bits >= bit_budget) return std::nullopt;

  BigInt result = 1;
  for (const auto& pw : powers_) {
    result *= ipow(pw.prime, static_cast<std::uint64_t>(pw.exponent.offset()));
    if (bit_length(result) > bit_budget) return std::nullopt;
  }
  for (const auto& r : runs_) {
    auto& table = PrimeTable::instance();
    std::vector<BigInt> primes;
    for (BigInt i = r.first.offset(); i <= r.last.offset(); ++i) {
      auto idx = to_u64(i);
      if (!idx) throw BudgetExceeded("prime run index exceeds budget");
      primes.emplace_back(table.nth_prime(*idx));
    }
    result *= product_of(std::move(primes));
    if (bit_length(result) > bit_budget) return std::nullopt;
  }
  return result;
}

std::optional<SymNat> FactoredNatural::big_omega() const {
  SymNat total(0);
  for (const auto& pw : powers_) {
    auto s = add(total, pw.exponent);
    if (!s) return std::nullopt;
    total = std::move(*s);
  }
  for (const auto& r : runs_) {
    auto s = add(total, run_length(r));
    if (!s) return std::nullopt;
    total = std::move(*s);
  }
  return total;
}

std::optional<SymNat> FactoredNatural::small_omega() const {
  SymNat total(static_cast<std::uint64_t>(powers_.size()));
  for (const auto& r : runs_) {
    auto s = add(total, run_length(r));
    if (!s) return std::nullopt;
    total = std::move(*s);
  }
  return total;
}

std::optional<SymNat> FactoredNatural::valuation(const BigInt& p) const {
  for (const auto& pw : powers_) {
    if (pw.prime == p) return pw.exponent;
  }
  if (runs_.empty()) return SymNat(0);
  if (!is_prime(p)) return SymNat(0);
  SymNat idx;
  try {
    idx = SymNat(prime_index(p));
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
  for (const auto& r : runs_) {
    auto where = locate(idx, r);
    if (!where) return std::nullopt;
    if (*where == 0) return SymNat(1);
  }
  return SymNat(0);
}

std::optional<BigInt> FactoredNatural::least_prime() const {
  std::optional<BigInt> best;
  if (!powers_.empty()) best = powers_.front().prime;
  if (!runs_.empty()) {
    const auto& first = runs_.front().first;
    if (!first.is_concrete()) return best ? best : std::nullopt;
    auto i = to_u64(first.offset());
    if (!i || *i > limits().prime_index_budget) return best;
    BigInt q = PrimeTable::instance().nth_prime(*i);
    if (!best || q < *best) best = q;
  }
  return best;
}

std::string FactoredNatural::to_string() const {
  if (is_one()) return "1";
  std::string s;
  auto sep = [&] {
    if (!s.empty()) s += " * ";
  };
  for (const auto& pw : powers_) {
    sep();
    s += power_text(pw);
  }
  for (const auto& r : runs_) {
    sep();
    s += "q[" + r.first.to_string() + ".." + r.last.to_string() + "]";
  }
  return s;
}

bool identical(const FactoredNatural& a, const FactoredNatural& b) {
  if (a.powers_.size() != b.powers_.size() || a.runs_.size() != b.runs_.size()) return false;
  for (std::size_t i = 0; i < a.powers_.size(); ++i) {
    if (a.powers_[i].prime != b.powers_[i].prime) return false;
    if (!a.powers_[i].exponent.identical(b.powers_[i].exponent)) return false;
  }
  for (std::size_t i = 0; i < a.runs_.size(); ++i) {
    if (!a.runs_[i].first.identical(b.runs_[i].first)) return false;
    if (!a.runs_[i].last.identical(b.runs_[i].last)) return false;
  }
  return true;
}

Truth equal(const FactoredNatural& a, const FactoredNatural& b) {
  if (identical(a, b)) return Truth::yes;
  std::optional<BigInt> ia, ib;
  try {
    ia = a.to_integer();
    ib = b.to_integer();
  } catch (const BudgetExceeded&) {
    return Truth::unknown;
  }
  if (ia && ib) return truth(*ia == *ib);
  if (ia || ib) return Truth::no;  // exactly one side is >= 2^bit_budget

  // Both are huge: look for an invariant that separates them.
  auto la = a.least_prime(), lb = b.least_prime();
  if (la && lb && *la != *lb) return Truth::no;
  auto differs = [](const std::optional<SymNat>& x, const std::optional<SymNat>& y) {
    return x && y && equal(*x, *y) == Truth::no;
  };
  for (const auto& pw : a.powers_) {
    if (differs(pw.exponent, b.valuation(pw.prime))) return Truth::no;
  }
  for (const auto& pw : b.powers_) {
    if (differs(pw.exponent, a.valuation(pw.prime))) return Truth::no;
  }
  if (differs(a.small_omega(), b.small_omega())) return Truth::no;
  if (differs(a.big_omega(), b.big_omega())) return Truth::no;
  return Truth::unknown;
}

FactoredNatural factorize(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("factorize: argument must be >= 1");
  auto v = to_u128(n);
  if (!v) throw std::invalid_argument("factorize: argument exceeds 128 bits");
  std::vector<PrimePower> powers;
  for (const auto& [p, e] : factor_u128(*v)) powers.push_back({from_u128(p), SymNat(static_cast<std::uint64_t>(e))});
  return FactoredNatural(std::move(powers));
}

FactoredNatural factorize(std::uint64_t n) { return factorize(BigInt(n)); }

FactoredNatural multiply(const FactoredNatural& a, const FactoredNatural& b) {
  std::vector<PrimePower> powers = a.powers();
  powers.insert(powers.end(), b.powers().begin(), b.powers().end());
  std::vector<PrimeRun> runs = a.runs();
  runs.insert(runs.end(), b.runs().begin(), b.runs().end());
  return FactoredNatural(std::move(powers), std::move(runs));
}

}  // namespace arithdyn
