#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "arithdyn/arithfun.hpp"
#include "arithdyn/report.hpp"

namespace arithdyn {

/// f on 1..bound with saturating 64-bit values, plus the inverse relation
/// restricted to the window.
class FunctionTable {
 public:
  static constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

  FunctionTable(const FunctionId& f, std::uint64_t bound);

  const FunctionId& function() const { return f_; }
  std::uint64_t bound() const { return bound_; }
  /// f(n) for 1 <= n <= bound, kSaturated when f(n) >= 2^64.
  std::uint64_t operator()(std::uint64_t n) const { return values_[n]; }
  /// All n <= bound with f(n) = m, ascending; m <= bound.
  std::span<const std::uint64_t> preimages(std::uint64_t m) const;

 private:
  FunctionId f_;
  std::uint64_t bound_;
  std::vector<std::uint64_t> values_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint64_t> sources_;
};

enum class TopologyKind { TAU, TAU_BAR };
enum class SetCompleteness { COMPLETE, TRUNCATED };

/// Minimal open neighbourhood V(point, tau_f) (preimage closure) or
/// V(point, tau-bar_f) (forward orbit). Members ascending.
struct MinimalOpenSet {
  std::uint64_t point = 0;
  TopologyKind topology = TopologyKind::TAU_BAR;
  std::vector<BigInt> members;
  SetCompleteness completeness = SetCompleteness::COMPLETE;
  std::uint64_t bound = 0;  // the member limit or scan bound when TRUNCATED

  bool contains(const BigInt& x) const;
};

/// Forward orbit of x, COMPLETE once it enters a cycle; TRUNCATED after
/// member_limit members or when an iterate leaves the 128-bit range.
MinimalOpenSet min_open_forward(const FunctionId& f, std::uint64_t x, std::uint64_t member_limit = 256);

/// Preimage closure of x. Expansive f: complete, inside 1..x. phi: built
/// from inverse_phi, COMPLETE only if the closure stays below scan_bound.
/// phi*: scan of 1..scan_bound, always TRUNCATED. Omega, omega, d_l throw
/// NotFiniteFibre.
MinimalOpenSet min_open_backward(const FunctionId& f, std::uint64_t x, std::uint64_t scan_bound = 100'000);
/// Same for an expansive f using a precomputed table with x <= table.bound().
MinimalOpenSet min_open_backward(const FunctionTable& table, std::uint64_t x);

/// Hypothesis f(1) = 1 and f(n) < n on 1 < n <= bound, then checks that
/// every orbit from 2..bound reaches 1.
VerificationReport contains_one_forward(const FunctionId& f, std::uint64_t bound);

/// Hypothesis f(1) = 1 and f(n) >= n on 1 < n <= bound; also checks
/// directly that 1 is not in the orbit of any 1 < n <= bound. Every n
/// violating the hypothesis (up to a few dozen) is listed in `witnesses`.
VerificationReport separation_check(const FunctionId& f, std::uint64_t bound);

struct ResidueClass {
  std::uint64_t modulus = 1;
  std::uint64_t residue = 0;
};
struct ExplicitSet {
  std::vector<std::uint64_t> elements;  // strictly increasing
};
struct Complement {};

/// One block of a partition of N: a residue class, an explicit list, or
/// everything not covered by the other blocks.
using BlockDescriptor = std::variant<ResidueClass, ExplicitSet, Complement>;

std::string describe(const BlockDescriptor& b);

struct PartitionReport {
  std::uint64_t bound = 0;
  /// successor[n] within n's block, 0 when it lies beyond the window.
  std::vector<std::uint64_t> successor;
  std::vector<std::size_t> block_of;
  std::vector<std::uint64_t> boundary;  // elements whose successor leaves the window
  std::vector<std::vector<std::uint64_t>> components;
  std::size_t nonempty_blocks = 0;
  bool refines_partition = true;  // no component meets two blocks
};

/// Builds the successor map of the partition on 1..bound and its connected
/// components. Throws std::invalid_argument if blocks overlap or miss an element.
PartitionReport partition_map(const std::vector<BlockDescriptor>& blocks, std::uint64_t bound);

/// Connected components of the graph n -- f(n) on 1..bound (edges leaving the window dropped).
std::vector<std::vector<std::uint64_t>> window_components(const FunctionTable& table);

}  // namespace arithdyn
