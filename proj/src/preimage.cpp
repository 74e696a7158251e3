#include "arithdyn/preimage.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "arithdyn/config.hpp"
#include "arithdyn/primes.hpp"

namespace arithdyn {

namespace {

using Candidates = std::vector<std::uint64_t>;

// All n with phi(n) = m whose prime factors come from cands[from..] (descending).
void invert(std::uint64_t m, const Candidates& cands, std::size_t from, std::uint64_t acc,
            std::vector<std::uint64_t>& out) {
  if (m == 1) out.push_back(acc);
  for (std::size_t j = from; j < cands.size(); ++j) {
    const std::uint64_t p = cands[j];
    if (m % (p - 1) != 0) continue;
    std::uint64_t rest = m / (p - 1);
    std::uint64_t pa = p;
    while (true) {
      invert(rest, cands, j + 1, acc * pa, out);
      if (rest % p != 0) break;
      rest /= p;
      pa *= p;
    }
  }
}

}  // namespace

bool is_expansive_family(const FunctionId& f) {
  return f.family == Family::GeneralizedPsi || f.family == Family::SigmaPower ||
         (f.family == Family::Jordan && f.param >= 2);
}

PreimageResult preimage_expansive(const FunctionId& f, std::uint64_t m) {
  validate(f);
  if (!is_expansive_family(f)) throw std::invalid_argument(f.name() + " is not an expansive function");
  PreimageResult r;
  r.target = m;
  r.bound = m;
  for (std::uint64_t n = 1; n <= m; ++n) {
    const BigInt v = eval_small(f, sieve_factor(n));
    if (v < n) throw std::invalid_argument(f.name() + " is not expansive at n = " + std::to_string(n));
    if (v == m) r.members.push_back(n);
  }
  return r;
}

PreimageResult bounded_preimage(const FunctionId& f, std::uint64_t m, std::uint64_t bound) {
  validate(f);
  PreimageResult r;
  r.target = m;
  r.bound = bound;
  r.completeness = Completeness::BOUNDED_SEARCH;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (eval_small(f, sieve_factor(n)) == m) r.members.push_back(n);
  }
  return r;
}

FactoredNatural phi_bound(std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("phi_bound: m must be >= 1");
  const auto exponent = static_cast<std::uint64_t>(bit_length(BigInt(m)));  // floor(log2 m) + 1
  std::vector<PrimePower> powers;
  for (std::uint64_t p : PrimeTable::instance().primes_up_to(m + 1)) powers.push_back({BigInt(p), SymNat(exponent)});
  return FactoredNatural(std::move(powers));
}

PreimageResult inverse_phi(std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("inverse_phi: m must be >= 1");
  if (m > limits().inverse_phi_max)
    throw BudgetExceeded("inverse_phi: m = " + std::to_string(m) + " exceeds the configured maximum");
  Candidates cands;
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    for (std::uint64_t q : {d, m / d}) {
      if (is_prime(static_cast<u128>(q + 1))) cands.push_back(q + 1);
    }
  }
  std::sort(cands.begin(), cands.end(), std::greater<>());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  PreimageResult r;
  r.target = m;
  invert(m, cands, 0, 1, r.members);
  std::sort(r.members.begin(), r.members.end());
  return r;
}

std::vector<std::uint64_t> nonfinite_fibre_witness(const FunctionId& f, std::uint64_t target, std::uint64_t count) {
  validate(f);
  const bool supported = ((f.family == Family::BigOmega || f.family == Family::SmallOmega) && target == 1) ||
                         (f.family == Family::DivisorCount && target == f.param);
  if (!supported)
    throw std::invalid_argument("no infinite-fibre witness for " + f.name() + " at " + std::to_string(target));
  std::vector<std::uint64_t> out;
  auto& table = PrimeTable::instance();
  for (std::uint64_t i = 1; i <= count; ++i) out.push_back(table.nth_prime(i));
  return out;
}

}  // namespace arithdyn
