#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arithdyn/bigint.hpp"
#include "arithdyn/factored.hpp"
#include "arithdyn/report.hpp"
#include "arithdyn/symnat.hpp"

namespace arithdyn {

enum class Family { Jordan, GeneralizedPsi, UnitaryTotient, BigOmega, SmallOmega, DivisorCount, SigmaPower };

/// One function of the catalogue. `param` is k for Jordan, GeneralizedPsi
/// and SigmaPower, l for DivisorCount, and 0 otherwise.
struct FunctionId {
  Family family = Family::Jordan;
  unsigned param = 1;

  static FunctionId jordan(unsigned k) { return {Family::Jordan, k}; }
  static FunctionId psi_k(unsigned k) { return {Family::GeneralizedPsi, k}; }
  static FunctionId sigma(unsigned k) { return {Family::SigmaPower, k}; }
  static FunctionId divisors(unsigned l) { return {Family::DivisorCount, l}; }
  static FunctionId phi() { return jordan(1); }
  static FunctionId psi() { return psi_k(1); }
  static FunctionId phi_star() { return {Family::UnitaryTotient, 0}; }
  static FunctionId big_omega() { return {Family::BigOmega, 0}; }
  static FunctionId small_omega() { return {Family::SmallOmega, 0}; }
  static FunctionId d() { return divisors(2); }

  /// Short canonical name: phi, J_2, psi, psi_3, phi*, Omega, omega, d, d_3, sigma_1.
  std::string name() const;

  friend bool operator==(const FunctionId&, const FunctionId&) = default;
};

/// Throws std::invalid_argument when the parameter is out of range.
void validate(const FunctionId& f);

/// Accepts the canonical names plus aliases (jordan, J, psik, sigma, phistar,
/// bigomega, smallomega, ...). `param` overrides or supplies k / l.
FunctionId parse_function(const std::string& name, std::optional<unsigned> param = std::nullopt);

/// Every function in the catalogue with parameter <= max_param.
std::vector<FunctionId> catalogue(unsigned max_param);

/// Result of eval: either a count (Omega, omega, d_l, sigma_l) or a product
/// kept partly factored (Jordan, psi_k, phi*). For products the pending
/// cofactors p^k -/+ 1 are only factored on demand.
class Value {
 public:
  static Value count(SymNat v);
  static Value product(FactoredNatural known, std::vector<BigInt> pending);

  bool is_count() const { return is_count_; }

  /// nullopt when the value does not fit the bit budget.
  std::optional<BigInt> to_integer() const;
  /// Fully factored form; throws BudgetExceeded if a cofactor is beyond 128 bits.
  FactoredNatural factored() const;
  /// Whether this value equals x.
  Truth equals(const FactoredNatural& x) const;

  std::string to_string() const;

 private:
  bool is_count_ = true;
  SymNat count_;
  FactoredNatural known_;
  std::vector<BigInt> pending_;
};

/// Closed-form evaluation. Prime runs are accepted only by Omega and omega.
Value eval(const FunctionId& f, const FactoredNatural& n);
BigInt eval(const FunctionId& f, const BigInt& n);

using SmallFactorization = std::vector<std::pair<std::uint64_t, unsigned>>;

/// Sieve factorization of 1 <= n <= limits().sieve_bound.
SmallFactorization sieve_factor(std::uint64_t n);

/// Fast path for sweeps: the closed form in 128-bit arithmetic, nullopt on overflow.
std::optional<u128> eval_u128(const FunctionId& f, const SmallFactorization& n);
/// Fast path falling back to big integers on overflow.
BigInt eval_small(const FunctionId& f, const SmallFactorization& n);

/// Value from the counting or product definition, sharing no code with
/// eval. Throws BudgetExceeded outside limits().oracle_budget / oracle_n_max.
BigInt eval_oracle(const FunctionId& f, std::uint64_t n);

/// Checks psi_k(n) * J_k(n) = J_2k(n) for 1 <= n <= n_max.
VerificationReport psi_jordan_identity_check(unsigned k, std::uint64_t n_max);

}  // namespace arithdyn
