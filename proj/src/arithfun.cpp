#include "arithdyn/arithfun.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "arithdyn/config.hpp"
#include "arithdyn/primes.hpp"

namespace arithdyn {

namespace {

bool is_count_family(Family f) {
  return f == Family::BigOmega || f == Family::SmallOmega || f == Family::DivisorCount || f == Family::SigmaPower;
}

// Binomial C(e + l - 1, l - 1), the number of ordered l-tuples of exponents summing to e.
BigInt tuple_count(const BigInt& e, unsigned l) {
  BigInt r = 1;
  for (unsigned i = 1; i < l; ++i) r = r * (e + i) / i;
  return r;
}

void check_bits(const BigInt& exponent, const BigInt& p, const FunctionId& f) {
  if (exponent * bit_length(p) > limits().bit_budget)
    throw BudgetExceeded(f.name() + ": value exceeds the big-integer budget");
}

bool mul_into(u128& acc, u128 x) { return !__builtin_mul_overflow(acc, x, &acc); }

std::optional<u128> pow_checked(u128 base, std::uint64_t e) {
  u128 r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (!mul_into(r, base)) return std::nullopt;
  }
  return r;
}

}  // namespace

std::string FunctionId::name() const {
  switch (family) {
    case Family::Jordan: return param == 1 ? "phi" : "J_" + std::to_string(param);
    case Family::GeneralizedPsi: return param == 1 ? "psi" : "psi_" + std::to_string(param);
    case Family::UnitaryTotient: return "phi*";
    case Family::BigOmega: return "Omega";
    case Family::SmallOmega: return "omega";
    case Family::DivisorCount: return param == 2 ? "d" : "d_" + std::to_string(param);
    case Family::SigmaPower: return "sigma_" + std::to_string(param);
  }
  return "?";
}

void validate(const FunctionId& f) {
  switch (f.family) {
    case Family::Jordan:
    case Family::GeneralizedPsi:
    case Family::SigmaPower:
      if (f.param < 1) throw std::invalid_argument(f.name() + ": parameter must be >= 1");
      break;
    case Family::DivisorCount:
      if (f.param < 2) throw std::invalid_argument("d_l: parameter must be >= 2");
      break;
    default:
      break;
  }
}

FunctionId parse_function(const std::string& raw, std::optional<unsigned> param) {
  std::string name;
  for (char c : raw) {
    if (c != '-' && c != ' ') name += c;
  }
  // Suffix forms such as J_2, psi_3, d_3, sigma_2.
  std::optional<unsigned> suffix;
  if (auto us = name.find('_'); us != std::string::npos && us + 1 < name.size()) {
    const std::string tail = name.substr(us + 1);
    if (std::all_of(tail.begin(), tail.end(), [](unsigned char c) { return std::isdigit(c); })) {
      suffix = static_cast<unsigned>(std::stoul(tail));
      name = name.substr(0, us);
    }
  }
  const unsigned k = param.value_or(suffix.value_or(0));
  auto with = [&](Family fam, unsigned dflt) {
    FunctionId f{fam, k == 0 ? dflt : k};
    validate(f);
    return f;
  };
  if (name == "Omega" || name == "bigomega" || name == "BigOmega") return FunctionId::big_omega();
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "phi" || lower == "totient") return with(Family::Jordan, 1);
  if (lower == "j" || lower == "jordan") return with(Family::Jordan, 2);
  if (lower == "psi" || lower == "dedekind") return with(Family::GeneralizedPsi, 1);
  if (lower == "psik") return with(Family::GeneralizedPsi, 2);
  if (lower == "phi*" || lower == "phistar" || lower == "unitary" || lower == "unitarytotient")
    return FunctionId::phi_star();
  if (lower == "omega" || lower == "smallomega") return FunctionId::small_omega();
  if (lower == "d" || lower == "tau" || lower == "divisors") return with(Family::DivisorCount, 2);
  if (lower == "sigma") return with(Family::SigmaPower, 1);
  throw std::invalid_argument("unknown function id: " + raw);
}

std::vector<FunctionId> catalogue(unsigned max_param) {
  std::vector<FunctionId> out;
  for (unsigned k = 1; k <= max_param; ++k) out.push_back(FunctionId::jordan(k));
  for (unsigned k = 1; k <= max_param; ++k) out.push_back(FunctionId::psi_k(k));
  out.push_back(FunctionId::phi_star());
  out.push_back(FunctionId::big_omega());
  out.push_back(FunctionId::small_omega());
  for (unsigned l = 2; l <= std::max(2u, max_param); ++l) out.push_back(FunctionId::divisors(l));
  for (unsigned k = 1; k <= max_param; ++k) out.push_back(FunctionId::sigma(k));
  return out;
}

Value Value::count(SymNat v) {
  Value r;
  r.is_count_ = true;
  r.count_ = std::move(v);
  return r;
}

Value Value::product(FactoredNatural known, std::vector<BigInt> pending) {
  Value r;
  r.is_count_ = false;
  r.known_ = std::move(known);
  for (auto& c : pending) {
    if (c != 1) r.pending_.push_back(std::move(c));
  }
  return r;
}

std::optional<BigInt> Value::to_integer() const {
  if (is_count_) {
    if (!count_.is_concrete()) return std::nullopt;
    return count_.offset();
  }
  auto v = known_.to_integer();
  if (!v) return std::nullopt;
  for (const auto& c : pending_) {
    *v *= c;
    if (bit_length(*v) > limits().bit_budget) return std::nullopt;
  }
  return v;
}

FactoredNatural Value::factored() const {
  if (is_count_) {
    if (!count_.is_concrete()) throw BudgetExceeded("cannot factor a symbolic count");
    if (bit_length(count_.offset()) > 128) throw BudgetExceeded("count exceeds the factoring range");
    return factorize(count_.offset());
  }
  FactoredNatural r = known_;
  for (const auto& c : pending_) {
    if (bit_length(c) > 128) throw BudgetExceeded("cofactor exceeds the factoring range");
    r = multiply(r, factorize(c));
  }
  return r;
}

Truth Value::equals(const FactoredNatural& x) const {
  if (is_count_) {
    if (count_.is_concrete() && bit_length(count_.offset()) <= 128) return equal(factorize(count_.offset()), x);
    return equal(count_, SymNat::of(x));
  }
  const bool factorable =
      std::all_of(pending_.begin(), pending_.end(), [](const BigInt& c) { return bit_length(c) <= 128; });
  if (factorable) return equal(factored(), x);
  auto a = to_integer();
  auto b = x.to_integer();
  if (a && b) return truth(*a == *b);
  if (a || b) return Truth::no;
  return Truth::unknown;
}

std::string Value::to_string() const {
  if (is_count_) return count_.to_string();
  if (auto v = to_integer(); v && bit_length(*v) <= 332) return v->str();
  std::string s = known_.to_string();
  for (const auto& c : pending_) s += " * " + c.str();
  return s;
}

Value eval(const FunctionId& f, const FactoredNatural& n) {
  validate(f);
  const bool counting = is_count_family(f.family);
  if (n.is_one()) return counting ? Value::count(SymNat(1)) : Value::product({}, {});

  if (f.family == Family::BigOmega || f.family == Family::SmallOmega) {
    auto v = f.family == Family::BigOmega ? n.big_omega() : n.small_omega();
    if (!v) throw BudgetExceeded(f.name() + ": exponent sum is not representable");
    return Value::count(std::move(*v));
  }
  if (n.has_runs()) throw std::invalid_argument(f.name() + " does not accept prime-run factors");

  const unsigned k = f.param;
  switch (f.family) {
    case Family::Jordan:
    case Family::GeneralizedPsi: {
      // p^a -> p^(k(a-1)) (p^k -/+ 1)
      std::vector<PrimePower> known;
      std::vector<BigInt> pending;
      for (const auto& pw : n.powers()) {
        SymNat e = pw.exponent.times(k) - k;
        if (!(e.is_concrete() && e.offset().is_zero())) known.push_back({pw.prime, std::move(e)});
        const BigInt pk = ipow(pw.prime, k);
        pending.push_back(f.family == Family::Jordan ? BigInt(pk - 1) : BigInt(pk + 1));
      }
      return Value::product(FactoredNatural(std::move(known)), std::move(pending));
    }
    case Family::UnitaryTotient: {
      std::vector<BigInt> pending;
      for (const auto& pw : n.powers()) {
        if (!pw.exponent.is_concrete()) throw BudgetExceeded("phi*: symbolic exponent");
        check_bits(pw.exponent.offset(), pw.prime, f);
        pending.push_back(ipow(pw.prime, static_cast<std::uint64_t>(pw.exponent.offset())) - 1);
      }
      return Value::product({}, std::move(pending));
    }
    case Family::DivisorCount: {
      SymNat total(1);
      for (const auto& pw : n.powers()) {
        if (pw.exponent.is_concrete()) {
          total = total.times(tuple_count(pw.exponent.offset(), k));
        } else if (k == 2 && total.is_concrete()) {
          total = (pw.exponent + 1).times(total.offset());
        } else {
          throw BudgetExceeded(f.name() + ": product of symbolic exponents");
        }
      }
      return Value::count(std::move(total));
    }
    case Family::SigmaPower: {
      BigInt total = 1;
      for (const auto& pw : n.powers()) {
        if (!pw.exponent.is_concrete()) throw BudgetExceeded(f.name() + ": symbolic exponent");
        const BigInt& a = pw.exponent.offset();
        check_bits((a + 1) * k, pw.prime, f);
        const BigInt pk = ipow(pw.prime, k);
        total *= (ipow(pk, static_cast<std::uint64_t>(a + 1)) - 1) / (pk - 1);
      }
      return Value::count(SymNat(std::move(total)));
    }
    default:
      break;
  }
  throw std::logic_error("unreachable");
}

BigInt eval(const FunctionId& f, const BigInt& n) {
  auto v = eval(f, factorize(n)).to_integer();
  if (!v) throw BudgetExceeded(f.name() + "(" + n.str() + ") exceeds the big-integer budget");
  return *v;
}

SmallFactorization sieve_factor(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("sieve_factor: n must be >= 1");
  SmallFactorization out;
  auto& table = PrimeTable::instance();
  if (n > table.sieve_bound()) {
    for (const auto& [p, e] : factor_u128(n)) out.emplace_back(static_cast<std::uint64_t>(p), e);
    return out;
  }
  while (n > 1) {
    const std::uint32_t p = table.smallest_factor(n);
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

std::optional<u128> eval_u128(const FunctionId& f, const SmallFactorization& n) {
  if (n.empty()) return 1;
  const unsigned k = f.param;
  u128 acc = f.family == Family::BigOmega || f.family == Family::SmallOmega ? 0 : 1;
  for (const auto& [p, a] : n) {
    switch (f.family) {
      case Family::Jordan:
      case Family::GeneralizedPsi: {
        auto pk = pow_checked(p, k);
        auto lead = pow_checked(p, std::uint64_t{k} * (a - 1));
        if (!pk || !lead || !mul_into(acc, *lead)) return std::nullopt;
        if (!mul_into(acc, f.family == Family::Jordan ? *pk - 1 : *pk + 1)) return std::nullopt;
        break;
      }
      case Family::UnitaryTotient: {
        auto pa = pow_checked(p, a);
        if (!pa || !mul_into(acc, *pa - 1)) return std::nullopt;
        break;
      }
      case Family::BigOmega: acc += a; break;
      case Family::SmallOmega: acc += 1; break;
      case Family::DivisorCount: {
        u128 c = 1;
        for (unsigned i = 1; i < k; ++i) {
          if (!mul_into(c, a + i)) return std::nullopt;
          c /= i;
        }
        if (!mul_into(acc, c)) return std::nullopt;
        break;
      }
      case Family::SigmaPower: {
        auto pk = pow_checked(p, k);
        if (!pk) return std::nullopt;
        u128 term = 1, sum = 1;
        for (unsigned i = 0; i < a; ++i) {
          if (!mul_into(term, *pk) || __builtin_add_overflow(sum, term, &sum)) return std::nullopt;
        }
        if (!mul_into(acc, sum)) return std::nullopt;
        break;
      }
    }
  }
  return acc;
}

BigInt eval_small(const FunctionId& f, const SmallFactorization& n) {
  if (auto v = eval_u128(f, n)) return from_u128(*v);
  std::vector<PrimePower> powers;
  for (const auto& [p, a] : n) powers.push_back({BigInt(p), SymNat(static_cast<std::uint64_t>(a))});
  auto v = eval(f, FactoredNatural(std::move(powers))).to_integer();
  if (!v) throw BudgetExceeded(f.name() + ": value exceeds the big-integer budget");
  return *v;
}

VerificationReport psi_jordan_identity_check(unsigned k, std::uint64_t n_max) {
  if (k < 1 || k > limits().identity_k_max)
    throw std::invalid_argument("identity check: k must lie in 1.." + std::to_string(limits().identity_k_max));
  VerificationReport report;
  report.lemma_id = "psi-jordan-identity";
  report.families_checked = 1;
  report.depth = n_max;
  const auto psi = FunctionId::psi_k(k), jk = FunctionId::jordan(k), j2k = FunctionId::jordan(2 * k);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const auto fac = sieve_factor(n);
    auto a = eval_u128(psi, fac), b = eval_u128(jk, fac), c = eval_u128(j2k, fac);
    u128 ab;
    if (a && b && c && !__builtin_mul_overflow(*a, *b, &ab)) {
      if (ab == *c) continue;
    }
    const BigInt lhs = eval_small(psi, fac) * eval_small(jk, fac);
    const BigInt rhs = eval_small(j2k, fac);
    if (lhs != rhs) {
      report.fail({"k=" + std::to_string(k), n, rhs.str(), lhs.str()});
      return report;
    }
  }
  report.certified_bound = "psi_" + std::to_string(k) + " * J_" + std::to_string(k) + " = J_" +
                           std::to_string(2 * k) + " on 1.." + std::to_string(n_max);
  return report;
}

}  // namespace arithdyn
