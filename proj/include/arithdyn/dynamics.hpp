#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/arithfun.hpp"
#include "arithdyn/factored.hpp"
#include "arithdyn/report.hpp"

namespace arithdyn {

enum class Scheme { PHI_ANTI, D_ANTI, OMEGA_ANTI, SMALL_OMEGA_ANTI, PSI_ORBIT, J2_ORBIT };

std::string scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);
bool is_anti_scheme(Scheme s);
/// The function whose orbits (or anti-orbits) the scheme builds.
FunctionId scheme_function(Scheme s);
std::uint64_t depth_cap(Scheme s);

/// One family of a scheme. `index` is k for PHI_ANTI, PSI_ORBIT and J2_ORBIT;
/// otherwise it picks the index-th admissible prime (3, 5, 7, ... for D_ANTI
/// and SMALL_OMEGA_ANTI; 2, 3, 5, ... for OMEGA_ANTI).
struct FamilySpec {
  Scheme scheme = Scheme::PHI_ANTI;
  std::uint64_t index = 1;

  std::string label() const;
};

/// The first `count` families of a scheme, in index order.
std::vector<FamilySpec> first_families(Scheme s, std::uint64_t count);

/// n-th term (n >= 1). Throws std::out_of_range past the scheme's depth cap.
FactoredNatural family_term(const FamilySpec& spec, std::uint64_t n);
/// Terms 1..depth; cheaper than repeated family_term for the recursive schemes.
std::vector<FactoredNatural> family_terms(const FamilySpec& spec, std::uint64_t depth);

/// Checks f(term(n+1)) = term(n) for 1 <= n < depth and pairwise distinctness.
VerificationReport verify_antiorbit(const FamilySpec& spec, const FunctionId& f, std::uint64_t depth);
/// Checks f(term(n)) = term(n+1) for 1 <= n < depth and pairwise distinctness.
VerificationReport verify_orbit(const FamilySpec& spec, const FunctionId& f, std::uint64_t depth);
/// Checks that the depth-prefixes of the families are pairwise disjoint.
VerificationReport verify_disjoint(const std::vector<FamilySpec>& specs, std::uint64_t depth);

/// Runs the recurrence check for every family and the disjointness check,
/// attaching "o(f) >= c" or "a(f) >= c" on success.
VerificationReport certify_scheme(Scheme s, std::uint64_t families, std::uint64_t depth);

/// g(p, n) = a n + b.
struct AffineExponent {
  std::int64_t a = 1;
  std::int64_t b = 0;
};

/// f(p_i^n) = p_i^g(p_i, n) h(p_i) with every h(p_i) supported on the p_i.
/// A seed is the exponent vector of a family's first term.
struct GenericFamilySpec {
  FunctionId function;
  std::vector<std::uint64_t> primes;
  std::vector<AffineExponent> exponent_maps;
  std::vector<FactoredNatural> cofactors;
  std::vector<std::vector<BigInt>> seeds;
  std::uint64_t validation_depth = 8;
};

/// psi: g(p,n) = n-1, h(2) = 3, h(3) = 2^2; seed k is (1, k).
GenericFamilySpec psi_generic_spec(std::uint64_t families);
/// J_2: g(p,n) = 2n-2, h(2) = 3, h(3) = 2^3; seed k is (4k+1, 1).
GenericFamilySpec j2_generic_spec(std::uint64_t families);

struct GenericFamilyResult {
  std::vector<FactoredNatural> terms;
  std::vector<std::vector<BigInt>> exponents;
  VerificationReport report;
};

/// Terms 1..depth of family `family` (0-based seed index). Throws
/// std::invalid_argument when `spec` fails its consistency or cofactor
/// support check.
GenericFamilyResult generic_family_terms(const GenericFamilySpec& spec, std::size_t family, std::uint64_t depth);

enum class Monotonicity { DECREASING_WEAK, INCREASING_WEAK, INCREASING_STRICT_ABOVE_1, NONE };

std::string monotonicity_name(Monotonicity m);

struct MonotonicityResult {
  Monotonicity kind = Monotonicity::NONE;
  std::uint64_t bound = 0;
  /// Least n with f(n) > n and least n > 1 with f(n) <= n, when they exist.
  std::optional<std::uint64_t> first_above;
  std::optional<std::uint64_t> first_not_above;
  std::vector<std::string> conclusions;
};

MonotonicityResult classify_monotonicity(const FunctionId& f, std::uint64_t bound);

struct SearchBudget {
  std::uint64_t max_start = 200;
  std::uint64_t max_depth = 12;
  std::uint64_t max_families = 5;
  std::uint64_t scan_bound = 100'000;
};

struct SearchCandidate {
  std::string kind;  // "orbit" or "anti-orbit"
  std::vector<BigInt> prefix;
};

/// Exploratory greedy search for disjoint orbit / anti-orbit prefixes.
/// Results carry no claim.
struct SearchResult {
  FunctionId function;
  std::vector<SearchCandidate> candidates;
  std::vector<std::string> notes;
};

SearchResult search_families(const FunctionId& f, const SearchBudget& budget);

}  // namespace arithdyn
