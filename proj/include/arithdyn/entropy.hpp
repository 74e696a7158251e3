#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arithdyn/arithfun.hpp"

namespace arithdyn {

enum class Direction { FORWARD, BACKWARD };

/// AMBIENT works on all of N; CORE restricts to the surjective core and is
/// only available for expansive functions.
enum class EntropyMode { AMBIENT, CORE };

/// Partial value #(A u f(A) u ... u f^{n-1}(A)) / n (or the preimage analogue).
struct EntropyEstimate {
  FunctionId function;
  std::vector<std::uint64_t> seeds;
  std::uint64_t horizon = 0;
  BigInt numerator = 0;
  Direction direction = Direction::FORWARD;
  EntropyMode mode = EntropyMode::AMBIENT;
  /// Step after which the union stopped growing, if it did before the horizon.
  std::optional<std::uint64_t> stable_from;
  std::vector<std::string> notes;

  double value() const;
};

EntropyEstimate ent_set_estimate(const FunctionId& f, const std::vector<std::uint64_t>& seeds, std::uint64_t horizon);

/// Preimages come from inverse_phi for phi and from a 1..m scan for expansive
/// f; anything else throws (NotFiniteFibre for Omega, omega, d_l).
EntropyEstimate ent_cset_estimate(const FunctionId& f, const std::vector<std::uint64_t>& seeds,
                                  std::uint64_t horizon, EntropyMode mode = EntropyMode::AMBIENT);

enum class CoreMembership { IN_CORE, NOT_IN_CORE };

/// For expansive f: x lies in the surjective core iff its (finite) preimage
/// tree contains a fixed point.
CoreMembership surjective_core_membership(const FunctionId& f, std::uint64_t x);

}  // namespace arithdyn
