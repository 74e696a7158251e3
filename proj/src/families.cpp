#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "arithdyn/config.hpp"
#include "arithdyn/dynamics.hpp"
#include "arithdyn/primes.hpp"

namespace arithdyn {

namespace {

struct SchemeInfo {
  Scheme scheme;
  const char* name;
};

constexpr SchemeInfo kSchemes[] = {
    {Scheme::PHI_ANTI, "phi-anti"},     {Scheme::D_ANTI, "d-anti"},       {Scheme::OMEGA_ANTI, "omega-anti"},
    {Scheme::SMALL_OMEGA_ANTI, "smallomega-anti"}, {Scheme::PSI_ORBIT, "psi-orbit"}, {Scheme::J2_ORBIT, "j2-orbit"},
};

BigInt pow2(std::uint64_t e) { return BigInt(1) << e; }

// The prime selected by a prime-indexed scheme.
std::uint64_t scheme_prime(const FamilySpec& spec) {
  const bool odd_only = spec.scheme == Scheme::D_ANTI || spec.scheme == Scheme::SMALL_OMEGA_ANTI;
  return PrimeTable::instance().nth_prime(spec.index + (odd_only ? 1 : 0));
}

// Next term of a recursive scheme from the previous one.
FactoredNatural next_term(const FamilySpec& spec, const FactoredNatural& prev) {
  const std::uint64_t p = scheme_prime(spec);
  switch (spec.scheme) {
    case Scheme::D_ANTI:
      return FactoredNatural::prime_power(p, SymNat::of(prev) - 1);
    case Scheme::OMEGA_ANTI:
      return FactoredNatural::prime_power(p, SymNat::of(prev));
    case Scheme::SMALL_OMEGA_ANTI: {
      // p * q_{j+1} * ... * q_{j + x - 1} with p = q_j
      const std::uint64_t j = spec.index + 1;
      return FactoredNatural({PrimePower{p, SymNat(1)}}, {PrimeRun{SymNat(j + 1), SymNat::of(prev) + (j - 1)}});
    }
    default:
      throw std::logic_error("next_term: not a recursive scheme");
  }
}

FactoredNatural explicit_term(const FamilySpec& spec, std::uint64_t n) {
  const std::uint64_t k = spec.index;
  switch (spec.scheme) {
    case Scheme::PHI_ANTI:
      return FactoredNatural({{2, SymNat(k)}, {3, SymNat(n)}});
    case Scheme::PSI_ORBIT:
      return FactoredNatural({{2, SymNat(n)}, {3, SymNat(k)}});
    case Scheme::J2_ORBIT:
      return FactoredNatural({{2, SymNat(BigInt(pow2(n + 1) * k + pow2(n) - 1))}, {3, SymNat(1)}});
    default:
      throw std::logic_error("explicit_term: recursive scheme");
  }
}

void check_depth(const FamilySpec& spec, std::uint64_t n) {
  if (spec.index < 1) throw std::invalid_argument("family index must be >= 1");
  if (n < 1) throw std::invalid_argument("term positions start at 1");
  if (n > depth_cap(spec.scheme))
    throw std::out_of_range(scheme_name(spec.scheme) + ": depth " + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(depth_cap(spec.scheme)));
}

}  // namespace

std::string scheme_name(Scheme s) {
  for (const auto& info : kSchemes) {
    if (info.scheme == s) return info.name;
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  std::string key = name;
  std::replace(key.begin(), key.end(), '_', '-');
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  for (const auto& info : kSchemes) {
    if (key == info.name) return info.scheme;
  }
  if (key == "phi-antiorbit") return Scheme::PHI_ANTI;
  if (key == "d-antiorbit") return Scheme::D_ANTI;
  if (key == "omega-antiorbit") return Scheme::OMEGA_ANTI;
  if (key == "smallomega-antiorbit") return Scheme::SMALL_OMEGA_ANTI;
  if (key == "j2") return Scheme::J2_ORBIT;
  if (key == "psi") return Scheme::PSI_ORBIT;
  throw std::invalid_argument("unknown scheme: " + name);
}

bool is_anti_scheme(Scheme s) { return s != Scheme::PSI_ORBIT && s != Scheme::J2_ORBIT; }

FunctionId scheme_function(Scheme s) {
  switch (s) {
    case Scheme::PHI_ANTI: return FunctionId::phi();
    case Scheme::D_ANTI: return FunctionId::d();
    case Scheme::OMEGA_ANTI: return FunctionId::big_omega();
    case Scheme::SMALL_OMEGA_ANTI: return FunctionId::small_omega();
    case Scheme::PSI_ORBIT: return FunctionId::psi();
    case Scheme::J2_ORBIT: return FunctionId::jordan(2);
  }
  throw std::logic_error("unreachable");
}

std::uint64_t depth_cap(Scheme s) {
  const auto& caps = limits().depth_caps;
  switch (s) {
    case Scheme::OMEGA_ANTI: return caps.omega_anti;
    case Scheme::D_ANTI: return caps.d_anti;
    case Scheme::SMALL_OMEGA_ANTI: return caps.small_omega_anti;
    default: return caps.other;
  }
}

std::string FamilySpec::label() const {
  switch (scheme) {
    case Scheme::PHI_ANTI:
    case Scheme::PSI_ORBIT:
    case Scheme::J2_ORBIT:
      return scheme_name(scheme) + "[k=" + std::to_string(index) + "]";
    default:
      return scheme_name(scheme) + "[p=" + std::to_string(scheme_prime(*this)) + "]";
  }
}

std::vector<FamilySpec> first_families(Scheme s, std::uint64_t count) {
  std::vector<FamilySpec> out;
  for (std::uint64_t i = 1; i <= count; ++i) out.push_back({s, i});
  return out;
}

FactoredNatural family_term(const FamilySpec& spec, std::uint64_t n) {
  check_depth(spec, n);
  switch (spec.scheme) {
    case Scheme::PHI_ANTI:
    case Scheme::PSI_ORBIT:
    case Scheme::J2_ORBIT:
      return explicit_term(spec, n);
    default:
      return family_terms(spec, n).back();
  }
}

std::vector<FactoredNatural> family_terms(const FamilySpec& spec, std::uint64_t depth) {
  std::vector<FactoredNatural> terms;
  if (depth == 0) return terms;
  check_depth(spec, depth);
  terms.reserve(depth);
  switch (spec.scheme) {
    case Scheme::PHI_ANTI:
    case Scheme::PSI_ORBIT:
    case Scheme::J2_ORBIT:
      for (std::uint64_t n = 1; n <= depth; ++n) terms.push_back(explicit_term(spec, n));
      return terms;
    default:
      break;
  }
  terms.push_back(FactoredNatural::prime_power(scheme_prime(spec), SymNat(1)));
  while (terms.size() < depth) terms.push_back(next_term(spec, terms.back()));
  return terms;
}

GenericFamilySpec psi_generic_spec(std::uint64_t families) {
  GenericFamilySpec spec;
  spec.function = FunctionId::psi();
  spec.primes = {2, 3};
  spec.exponent_maps = {{1, -1}, {1, -1}};
  spec.cofactors = {factorize(std::uint64_t{3}), factorize(std::uint64_t{4})};
  for (std::uint64_t k = 1; k <= families; ++k) spec.seeds.push_back({BigInt(1), BigInt(k)});
  return spec;
}

GenericFamilySpec j2_generic_spec(std::uint64_t families) {
  GenericFamilySpec spec;
  spec.function = FunctionId::jordan(2);
  spec.primes = {2, 3};
  spec.exponent_maps = {{2, -2}, {2, -2}};
  spec.cofactors = {factorize(std::uint64_t{3}), factorize(std::uint64_t{8})};
  for (std::uint64_t k = 1; k <= families; ++k) spec.seeds.push_back({BigInt(4 * k + 1), BigInt(1)});
  return spec;
}

GenericFamilyResult generic_family_terms(const GenericFamilySpec& spec, std::size_t family, std::uint64_t depth) {
  const std::size_t m = spec.primes.size();
  if (m == 0 || spec.exponent_maps.size() != m || spec.cofactors.size() != m)
    throw std::invalid_argument("generic family: primes, exponent maps and cofactors must have equal length");
  if (family >= spec.seeds.size()) throw std::invalid_argument("generic family: no seed " + std::to_string(family));
  const auto& seed = spec.seeds[family];
  if (seed.size() != m) throw std::invalid_argument("generic family: seed has the wrong length");

  // Cofactor support: h(p_i) may only involve p_1..p_m.
  std::vector<std::vector<BigInt>> contribution(m, std::vector<BigInt>(m, 0));  // [target prime][source prime]
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& pw : spec.cofactors[i].powers()) {
      auto it = std::find(spec.primes.begin(), spec.primes.end(), pw.prime);
      if (it == spec.primes.end())
        throw std::invalid_argument("generic family: h(" + std::to_string(spec.primes[i]) + ") involves prime " +
                                    pw.prime.str() + " outside the family's primes");
      contribution[static_cast<std::size_t>(it - spec.primes.begin())][i] = pw.exponent.value();
    }
    if (spec.cofactors[i].has_runs()) throw std::invalid_argument("generic family: cofactors must be explicit");
  }

  auto g = [&](std::size_t i, const BigInt& n) { return spec.exponent_maps[i].a * n + spec.exponent_maps[i].b; };

  // Consistency: f(p_i^n) = p_i^g(p_i,n) h(p_i).
  for (std::size_t i = 0; i < m; ++i) {
    for (std::uint64_t n = 1; n <= spec.validation_depth; ++n) {
      const BigInt e = g(i, n);
      if (e.sign() < 0)
        throw std::invalid_argument("generic family: g(" + std::to_string(spec.primes[i]) + ", " + std::to_string(n) +
                                    ") is negative");
      FactoredNatural expected = spec.cofactors[i];
      if (!e.is_zero()) expected = multiply(expected, FactoredNatural::prime_power(spec.primes[i], SymNat(e)));
      const auto actual = eval(spec.function, FactoredNatural::prime_power(spec.primes[i], SymNat(n)));
      if (actual.equals(expected) != Truth::yes)
        throw std::invalid_argument("generic family: " + spec.function.name() + "(" + std::to_string(spec.primes[i]) +
                                    "^" + std::to_string(n) + ") = " + actual.to_string() + ", model gives " +
                                    expected.to_string());
    }
  }

  GenericFamilyResult result;
  result.report.lemma_id = "generic-note";
  result.report.families_checked = 1;
  result.report.depth = depth;
  const std::string label = spec.function.name() + " generic family " + std::to_string(family + 1);

  std::vector<BigInt> x = seed;
  for (std::uint64_t t = 1; t <= depth; ++t) {
    std::vector<PrimePower> powers;
    for (std::size_t i = 0; i < m; ++i) {
      if (x[i] < 1) throw std::invalid_argument("generic family: exponent of " + std::to_string(spec.primes[i]) +
                                                " drops below 1 at term " + std::to_string(t));
      powers.push_back({BigInt(spec.primes[i]), SymNat(x[i])});
    }
    result.terms.emplace_back(std::move(powers));
    result.exponents.push_back(x);
    // s_i(x) = g(p_i, x_i) + sum_j v_{p_i}(h(p_j))
    std::vector<BigInt> next(m);
    for (std::size_t i = 0; i < m; ++i) {
      next[i] = g(i, x[i]);
      for (std::size_t j = 0; j < m; ++j) next[i] += contribution[i][j];
    }
    x = std::move(next);
  }

  for (std::size_t t = 0; t + 1 < result.terms.size(); ++t) {
    const auto image = eval(spec.function, result.terms[t]);
    if (image.equals(result.terms[t + 1]) != Truth::yes) {
      result.report.fail({label, t + 1, result.terms[t + 1].to_string(), image.to_string()});
      return result;
    }
  }
  std::set<std::vector<BigInt>> seen;
  for (std::size_t t = 0; t < result.exponents.size(); ++t) {
    if (!seen.insert(result.exponents[t]).second) {
      result.report.fail({label, t + 1, "an exponent vector not seen before", result.terms[t].to_string()});
      return result;
    }
  }
  result.report.notes.push_back("orbit relation and injectivity verified on terms 1.." + std::to_string(depth));
  return result;
}

}  // namespace arithdyn
