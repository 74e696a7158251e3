#include "arithdyn/topology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "arithdyn/config.hpp"
#include "arithdyn/preimage.hpp"
#include "arithdyn/primes.hpp"

namespace arithdyn {

namespace {

constexpr std::size_t kMaxWitnesses = 32;

struct DisjointSets {
  std::vector<std::uint64_t> parent;
  explicit DisjointSets(std::uint64_t n) : parent(n + 1) { std::iota(parent.begin(), parent.end(), 0); }
  std::uint64_t find(std::uint64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint64_t a, std::uint64_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<std::vector<std::uint64_t>> components_of(DisjointSets& sets, std::uint64_t bound) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> groups;
  for (std::uint64_t n = 1; n <= bound; ++n) groups[sets.find(n)].push_back(n);
  std::vector<std::vector<std::uint64_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

bool finite_fibres_unknown(const FunctionId& f) {
  return f.family == Family::BigOmega || f.family == Family::SmallOmega || f.family == Family::DivisorCount;
}

std::optional<BigInt> forward_image(const FunctionId& f, const BigInt& n) {
  if (auto small = to_u64(n); small && *small <= PrimeTable::instance().sieve_bound())
    return eval_small(f, sieve_factor(*small));
  if (bit_length(n) > 128) return std::nullopt;
  try {
    return eval(f, n);
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

std::string value_text(const FunctionTable& t, std::uint64_t n) {
  const auto v = t(n);
  return v == FunctionTable::kSaturated ? ">= 2^64" : std::to_string(v);
}

void sort_members(MinimalOpenSet& s) { std::sort(s.members.begin(), s.members.end()); }

}  // namespace

FunctionTable::FunctionTable(const FunctionId& f, std::uint64_t bound) : f_(f), bound_(bound) {
  validate(f);
  values_.assign(bound + 1, 0);
  std::vector<std::uint64_t> counts(bound + 2, 0);
  for (std::uint64_t n = 1; n <= bound; ++n) {
    const auto fac = sieve_factor(n);
    auto v = eval_u128(f, fac);
    std::uint64_t value = kSaturated;
    if (v) {
      if ((*v >> 64) == 0) value = static_cast<std::uint64_t>(*v);
    } else if (const BigInt big = eval_small(f, fac); bit_length(big) <= 63) {
      value = static_cast<std::uint64_t>(big);
    }
    values_[n] = value;
    if (value <= bound) ++counts[value];
  }
  offsets_.assign(bound + 2, 0);
  for (std::uint64_t m = 1; m <= bound; ++m) offsets_[m + 1] = offsets_[m] + counts[m];
  sources_.assign(offsets_[bound + 1], 0);
  std::vector<std::uint64_t> fill(offsets_.begin(), offsets_.end());
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (values_[n] <= bound) sources_[fill[values_[n]]++] = n;
  }
}

std::span<const std::uint64_t> FunctionTable::preimages(std::uint64_t m) const {
  if (m < 1 || m > bound_) throw std::out_of_range("FunctionTable::preimages: target outside the window");
  return {sources_.data() + offsets_[m], sources_.data() + offsets_[m + 1]};
}

bool MinimalOpenSet::contains(const BigInt& x) const { return std::binary_search(members.begin(), members.end(), x); }

MinimalOpenSet min_open_forward(const FunctionId& f, std::uint64_t x, std::uint64_t member_limit) {
  validate(f);
  if (x == 0) throw std::invalid_argument("min_open_forward: x must be >= 1");
  MinimalOpenSet s;
  s.point = x;
  s.topology = TopologyKind::TAU_BAR;
  std::set<BigInt> seen{BigInt(x)};
  BigInt cur = x;
  while (true) {
    if (seen.size() >= member_limit) {
      s.completeness = SetCompleteness::TRUNCATED;
      s.bound = member_limit;
      break;
    }
    auto next = forward_image(f, cur);
    if (!next) {
      s.completeness = SetCompleteness::TRUNCATED;
      s.bound = member_limit;
      break;
    }
    if (!seen.insert(*next).second) break;  // entered a cycle
    cur = std::move(*next);
  }
  s.members.assign(seen.begin(), seen.end());
  return s;
}

MinimalOpenSet min_open_backward(const FunctionTable& table, std::uint64_t x) {
  if (x < 1 || x > table.bound()) throw std::out_of_range("min_open_backward: point outside the table");
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (table(n) < n)
      throw std::invalid_argument(table.function().name() + " is not expansive at n = " + std::to_string(n));
  }
  MinimalOpenSet s;
  s.point = x;
  s.topology = TopologyKind::TAU;
  std::vector<std::uint64_t> stack{x};
  std::set<std::uint64_t> seen{x};
  while (!stack.empty()) {
    const auto y = stack.back();
    stack.pop_back();
    for (auto n : table.preimages(y)) {
      if (seen.insert(n).second) stack.push_back(n);
    }
  }
  for (auto n : seen) s.members.emplace_back(n);
  return s;
}

MinimalOpenSet min_open_backward(const FunctionId& f, std::uint64_t x, std::uint64_t scan_bound) {
  validate(f);
  if (x == 0) throw std::invalid_argument("min_open_backward: x must be >= 1");
  if (finite_fibres_unknown(f)) throw NotFiniteFibre(f.name() + " is not finite fibre: preimage closures are infinite");
  if (is_expansive_family(f)) return min_open_backward(FunctionTable(f, x), x);

  MinimalOpenSet s;
  s.point = x;
  s.topology = TopologyKind::TAU;
  s.bound = scan_bound;
  std::set<std::uint64_t> seen{x};
  std::vector<std::uint64_t> stack{x};
  bool truncated = false;

  if (f == FunctionId::phi()) {
    while (!stack.empty()) {
      const auto y = stack.back();
      stack.pop_back();
      for (auto n : inverse_phi(y).members) {
        if (n >= scan_bound) {
          truncated = true;
          continue;
        }
        if (seen.insert(n).second) stack.push_back(n);
      }
    }
  } else {
    // No complete fibre enumeration: search the window only.
    const FunctionTable table(f, scan_bound);
    truncated = true;
    while (!stack.empty()) {
      const auto y = stack.back();
      stack.pop_back();
      if (y > scan_bound) continue;
      for (auto n : table.preimages(y)) {
        if (seen.insert(n).second) stack.push_back(n);
      }
    }
  }
  s.completeness = truncated ? SetCompleteness::TRUNCATED : SetCompleteness::COMPLETE;
  for (auto n : seen) s.members.emplace_back(n);
  sort_members(s);
  return s;
}

VerificationReport contains_one_forward(const FunctionId& f, std::uint64_t bound) {
  VerificationReport report;
  report.lemma_id = "connected-forward";
  report.families_checked = 1;
  report.depth = bound;
  const FunctionTable table(f, bound);
  if (bound >= 1 && table(1) != 1) {
    report.fail({f.name(), 1, "f(1) = 1", "f(1) = " + value_text(table, 1)});
    return report;
  }
  for (std::uint64_t n = 2; n <= bound; ++n) {
    if (table(n) >= n) {
      report.fail({f.name(), n, "f(n) < n", "f(" + std::to_string(n) + ") = " + value_text(table, n)});
      report.notes.push_back("hypothesis f(n) < n fails; no verdict on connectivity");
      return report;
    }
  }
  // With f(n) < n every orbit descends; confirm it ends at 1.
  std::vector<bool> reaches_one(bound + 1, false);
  if (bound >= 1) reaches_one[1] = true;
  for (std::uint64_t n = 2; n <= bound; ++n) {
    reaches_one[n] = reaches_one[table(n)];
    if (!reaches_one[n]) {
      report.fail({f.name(), n, "1 in the forward orbit", "orbit misses 1"});
      return report;
    }
  }
  report.certified_bound = "1 in V(k, tau-bar_" + f.name() + ") for k <= " + std::to_string(bound) +
                           "; (N, tau-bar) connected (conditional: hypothesis verified up to " +
                           std::to_string(bound) + " only)";
  return report;
}

VerificationReport separation_check(const FunctionId& f, std::uint64_t bound) {
  VerificationReport report;
  report.lemma_id = "separation";
  report.families_checked = 1;
  report.depth = bound;
  const FunctionTable table(f, bound);
  if (bound >= 1 && table(1) != 1) {
    report.fail({f.name(), 1, "f(1) = 1", "f(1) = " + value_text(table, 1)});
    return report;
  }
  std::optional<std::uint64_t> least;
  std::uint64_t violations = 0;
  for (std::uint64_t n = 2; n <= bound; ++n) {
    if (table(n) >= n) continue;
    ++violations;
    if (!least) least = n;
    if (report.witnesses.size() < kMaxWitnesses) report.witnesses.push_back(std::to_string(n));
  }
  if (least) {
    report.fail({f.name(), *least, "f(n) >= n", "f(" + std::to_string(*least) + ") = " + value_text(table, *least)});
    report.notes.push_back(std::to_string(violations) + " values of n in 2.." + std::to_string(bound) +
                           " violate f(n) >= n");
    return report;
  }
  // Direct check: the fibre of 1 inside the window is {1}, so no orbit from n > 1 reaches 1.
  if (bound >= 1) {
    for (auto n : table.preimages(1)) {
      if (n == 1) continue;
      report.fail({f.name(), n, "f(n) != 1 for n > 1", "f(" + std::to_string(n) + ") = 1"});
      return report;
    }
  }
  report.certified_bound = "{1}, N\\{1} separate (N, tau_" + f.name() + ") and (N, tau-bar_" + f.name() +
                           "): disconnected (conditional: hypothesis verified up to " + std::to_string(bound) +
                           " only)";
  return report;
}

std::string describe(const BlockDescriptor& b) {
  if (const auto* r = std::get_if<ResidueClass>(&b))
    return "n = " + std::to_string(r->residue % r->modulus) + " (mod " + std::to_string(r->modulus) + ")";
  if (const auto* e = std::get_if<ExplicitSet>(&b)) {
    std::string s = "{";
    for (std::size_t i = 0; i < e->elements.size() && i < 8; ++i) s += (i ? ", " : "") + std::to_string(e->elements[i]);
    if (e->elements.size() > 8) s += ", ...";
    return s + "}";
  }
  return "complement";
}

PartitionReport partition_map(const std::vector<BlockDescriptor>& blocks, std::uint64_t bound) {
  if (blocks.empty()) throw std::invalid_argument("partition: no blocks");
  std::optional<std::size_t> complement;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (const auto* r = std::get_if<ResidueClass>(&blocks[b]); r && r->modulus == 0)
      throw std::invalid_argument("partition: modulus must be >= 1");
    if (const auto* e = std::get_if<ExplicitSet>(&blocks[b])) {
      if (!std::is_sorted(e->elements.begin(), e->elements.end()) ||
          std::adjacent_find(e->elements.begin(), e->elements.end()) != e->elements.end())
        throw std::invalid_argument("partition: explicit blocks must be strictly increasing");
    }
    if (std::holds_alternative<Complement>(blocks[b])) {
      if (complement) throw std::invalid_argument("partition: at most one complement block");
      complement = b;
    }
  }

  PartitionReport rep;
  rep.bound = bound;
  rep.block_of.assign(bound + 1, 0);
  rep.successor.assign(bound + 1, 0);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  for (std::uint64_t n = 1; n <= bound; ++n) {
    std::size_t owner = kNone;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      bool member = false;
      if (const auto* r = std::get_if<ResidueClass>(&blocks[b])) member = n % r->modulus == r->residue % r->modulus;
      if (const auto* e = std::get_if<ExplicitSet>(&blocks[b]))
        member = std::binary_search(e->elements.begin(), e->elements.end(), n);
      if (!member) continue;
      if (owner != kNone)
        throw std::invalid_argument("partition: " + std::to_string(n) + " lies in blocks " + std::to_string(owner + 1) +
                                    " and " + std::to_string(b + 1));
      owner = b;
    }
    if (owner == kNone) {
      if (!complement) throw std::invalid_argument("partition: " + std::to_string(n) + " lies in no block");
      owner = *complement;
    }
    rep.block_of[n] = owner;
  }

  std::vector<std::uint64_t> last(blocks.size(), 0);
  for (std::uint64_t n = 1; n <= bound; ++n) {
    auto& prev = last[rep.block_of[n]];
    if (prev != 0) rep.successor[prev] = n;
    prev = n;
  }
  DisjointSets sets(bound);
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (rep.successor[n] == 0)
      rep.boundary.push_back(n);
    else
      sets.unite(n, rep.successor[n]);
  }
  rep.components = components_of(sets, bound);
  rep.nonempty_blocks = static_cast<std::size_t>(std::count_if(last.begin(), last.end(), [](auto v) { return v != 0; }));
  for (const auto& c : rep.components) {
    for (auto n : c) {
      if (rep.block_of[n] != rep.block_of[c.front()]) rep.refines_partition = false;
    }
  }
  return rep;
}

std::vector<std::vector<std::uint64_t>> window_components(const FunctionTable& table) {
  DisjointSets sets(table.bound());
  for (std::uint64_t n = 1; n <= table.bound(); ++n) {
    if (table(n) <= table.bound()) sets.unite(n, table(n));
  }
  return components_of(sets, table.bound());
}

}  // namespace arithdyn
