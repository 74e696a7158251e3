#pragma once

#include <cstdint>
#include <vector>

#include "arithdyn/arithfun.hpp"
#include "arithdyn/factored.hpp"

namespace arithdyn {

enum class Completeness { COMPLETE, BOUNDED_SEARCH };

/// f^{-1}(target), sorted. With BOUNDED_SEARCH only 1..bound was searched.
struct PreimageResult {
  std::uint64_t target = 0;
  std::vector<std::uint64_t> members;
  Completeness completeness = Completeness::COMPLETE;
  std::uint64_t bound = 0;

  bool complete() const { return completeness == Completeness::COMPLETE; }
};

/// psi_k, J_k with k >= 2 and sigma_k: the functions with f(n) >= n.
bool is_expansive_family(const FunctionId& f);

/// f^{-1}(m) by scanning 1..m. f must be an expansive family; f(n) >= n is
/// re-verified on the scanned range (std::invalid_argument otherwise).
PreimageResult preimage_expansive(const FunctionId& f, std::uint64_t m);

/// Exhaustive scan of 1..bound; always BOUNDED_SEARCH.
PreimageResult bounded_preimage(const FunctionId& f, std::uint64_t m, std::uint64_t bound);

/// prod_{p <= m+1} p^(floor(log2 m) + 1), an upper bound for phi^{-1}(m).
FactoredNatural phi_bound(std::uint64_t m);

/// Complete phi^{-1}(m), built from prime powers p^a with (p-1)p^(a-1) | m.
/// Throws BudgetExceeded above limits().inverse_phi_max.
PreimageResult inverse_phi(std::uint64_t m);

/// `count` distinct members of f^{-1}(target) for Omega (1), omega (1) or
/// d_k (k): the first `count` primes.
std::vector<std::uint64_t> nonfinite_fibre_witness(const FunctionId& f, std::uint64_t target, std::uint64_t count);

}  // namespace arithdyn
