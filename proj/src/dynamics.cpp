#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

#include "arithdyn/config.hpp"
#include "arithdyn/dynamics.hpp"
#include "arithdyn/primes.hpp"

namespace arithdyn {

namespace {

// A term with its explicit value computed once, when it fits the budget.
struct Cached {
  const FactoredNatural* term;
  std::optional<BigInt> value;
  bool value_known = true;
};

Cached cache(const FactoredNatural& x) {
  Cached c{&x, std::nullopt, true};
  try {
    c.value = x.to_integer();
  } catch (const BudgetExceeded&) {
    c.value_known = false;
  }
  return c;
}

Truth same(const Cached& a, const Cached& b) {
  if (a.value_known && b.value_known) {
    if (a.value && b.value) return truth(*a.value == *b.value);
    if (a.value || b.value) return Truth::no;
  }
  return equal(*a.term, *b.term);
}

std::string describe(Truth t, const std::string& actual) {
  return t == Truth::unknown ? actual + " (equality undecided)" : actual;
}

std::string bound_symbol(Scheme s) { return is_anti_scheme(s) ? "a" : "o"; }

VerificationReport verify_recurrence(const FamilySpec& spec, const FunctionId& f, std::uint64_t depth, bool anti) {
  if (is_anti_scheme(spec.scheme) != anti)
    throw std::invalid_argument(scheme_name(spec.scheme) + (anti ? " is not an anti-orbit scheme" : " is not an orbit scheme"));
  if (!(scheme_function(spec.scheme) == f))
    throw std::invalid_argument("mismatched scheme: " + scheme_name(spec.scheme) + " does not describe " + f.name());
  VerificationReport report;
  report.lemma_id = scheme_name(spec.scheme) + (anti ? "orbit" : "");
  report.families_checked = 1;
  report.depth = depth;
  const std::string label = spec.label();
  const auto terms = family_terms(spec, depth);

  for (std::size_t n = 0; n + 1 < terms.size(); ++n) {
    const FactoredNatural& arg = anti ? terms[n + 1] : terms[n];
    const FactoredNatural& want = anti ? terms[n] : terms[n + 1];
    const std::uint64_t position = anti ? n + 2 : n + 1;
    try {
      const Value got = eval(f, arg);
      const Truth ok = got.equals(want);
      if (ok != Truth::yes) {
        report.fail({label, position, want.to_string(), describe(ok, got.to_string())});
        return report;
      }
    } catch (const BudgetExceeded& e) {
      report.fail({label, position, want.to_string(), std::string("budget exceeded: ") + e.what()});
      return report;
    }
  }

  std::vector<Cached> cached;
  for (const auto& t : terms) cached.push_back(cache(t));
  for (std::size_t i = 0; i < cached.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Truth t = same(cached[i], cached[j]);
      if (t != Truth::no) {
        report.fail({label, i + 1, "a term distinct from term " + std::to_string(j + 1),
                     describe(t, terms[i].to_string())});
        return report;
      }
    }
  }
  report.certified_bound = bound_symbol(spec.scheme) + "(" + f.name() + ") >= 1 at depth " + std::to_string(depth);
  return report;
}

}  // namespace

VerificationReport verify_antiorbit(const FamilySpec& spec, const FunctionId& f, std::uint64_t depth) {
  return verify_recurrence(spec, f, depth, true);
}

VerificationReport verify_orbit(const FamilySpec& spec, const FunctionId& f, std::uint64_t depth) {
  return verify_recurrence(spec, f, depth, false);
}

VerificationReport verify_disjoint(const std::vector<FamilySpec>& specs, std::uint64_t depth) {
  VerificationReport report;
  report.families_checked = specs.size();
  report.depth = depth;
  if (specs.empty()) {
    report.lemma_id = "disjoint";
    return report;
  }
  const Scheme scheme = specs.front().scheme;
  for (const auto& s : specs) {
    if (s.scheme != scheme) throw std::invalid_argument("verify_disjoint: families mix schemes");
  }
  report.lemma_id = scheme_name(scheme) + "-disjoint";

  std::vector<std::vector<FactoredNatural>> terms;
  for (const auto& s : specs) terms.push_back(family_terms(s, depth));
  std::vector<std::vector<Cached>> cached(terms.size());
  for (std::size_t a = 0; a < terms.size(); ++a) {
    for (const auto& t : terms[a]) cached[a].push_back(cache(t));
  }
  for (std::size_t b = 1; b < terms.size(); ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      for (std::size_t j = 0; j < cached[b].size(); ++j) {
        for (std::size_t i = 0; i < cached[a].size(); ++i) {
          const Truth t = same(cached[a][i], cached[b][j]);
          if (t == Truth::no) continue;
          report.fail({specs[b].label() + " vs " + specs[a].label(), j + 1,
                       "a term outside " + specs[a].label(), describe(t, terms[b][j].to_string())});
          return report;
        }
      }
    }
  }
  const FunctionId f = scheme_function(scheme);
  report.certified_bound = bound_symbol(scheme) + "(" + f.name() + ") >= " + std::to_string(specs.size()) +
                           " at depth " + std::to_string(depth);
  return report;
}

VerificationReport certify_scheme(Scheme s, std::uint64_t families, std::uint64_t depth) {
  const auto specs = first_families(s, families);
  const FunctionId f = scheme_function(s);
  const std::string id = scheme_name(s) + (is_anti_scheme(s) ? "orbit" : "");
  for (const auto& spec : specs) {
    auto r = is_anti_scheme(s) ? verify_antiorbit(spec, f, depth) : verify_orbit(spec, f, depth);
    if (!r.passed()) {
      r.lemma_id = id;
      r.families_checked = families;
      return r;
    }
  }
  auto report = verify_disjoint(specs, depth);
  report.lemma_id = id;
  report.notes.push_back("recurrence and distinctness verified for each family; families pairwise disjoint");
  return report;
}

std::string monotonicity_name(Monotonicity m) {
  switch (m) {
    case Monotonicity::DECREASING_WEAK: return "DECREASING_WEAK";
    case Monotonicity::INCREASING_WEAK: return "INCREASING_WEAK";
    case Monotonicity::INCREASING_STRICT_ABOVE_1: return "INCREASING_STRICT_ABOVE_1";
    case Monotonicity::NONE: return "NONE";
  }
  return "?";
}

MonotonicityResult classify_monotonicity(const FunctionId& f, std::uint64_t bound) {
  validate(f);
  if (bound < 2) throw std::invalid_argument("classify_monotonicity: bound must be >= 2");
  MonotonicityResult r;
  r.bound = bound;
  std::optional<std::uint64_t> first_below;
  bool fixes_one = false;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    const auto fac = sieve_factor(n);
    const auto fast = eval_u128(f, fac);
    const BigInt v = fast ? from_u128(*fast) : eval_small(f, fac);
    if (n == 1) fixes_one = v == 1;
    if (v > n && !r.first_above) r.first_above = n;
    if (v < n && !first_below) first_below = n;
    if (n > 1 && v <= n && !r.first_not_above) r.first_not_above = n;
  }
  const std::string tag = " (conditional: hypothesis verified up to " + std::to_string(bound) + " only)";
  const std::string name = f.name();
  if (!first_below && !r.first_not_above && fixes_one) {
    r.kind = Monotonicity::INCREASING_STRICT_ABOVE_1;
    r.conclusions = {"a(" + name + ") = 0" + tag, "o(" + name + ") > 0" + tag};
  } else if (!first_below) {
    r.kind = Monotonicity::INCREASING_WEAK;
    r.conclusions = {"a(" + name + ") = 0" + tag};
  } else if (!r.first_above) {
    r.kind = Monotonicity::DECREASING_WEAK;
    r.conclusions = {"o(" + name + ") = 0" + tag};
  } else {
    r.kind = Monotonicity::NONE;
  }
  return r;
}

SearchResult search_families(const FunctionId& f, const SearchBudget& budget) {
  validate(f);
  SearchResult result;
  result.function = f;
  result.notes.push_back("EXPERIMENTAL: greedy search over functional-graph prefixes; no claim is made");

  auto image = [&](const BigInt& n) -> std::optional<BigInt> {
    if (auto small = to_u64(n); small && *small <= PrimeTable::instance().sieve_bound())
      return eval_small(f, sieve_factor(*small));
    if (bit_length(n) > 128) return std::nullopt;
    try {
      return eval(f, n);
    } catch (const BudgetExceeded&) {
      return std::nullopt;
    }
  };

  std::set<BigInt> used;
  const std::uint64_t depth = std::max<std::uint64_t>(budget.max_depth, 2);

  // Orbits: accept a start whose iterates stay new for 4*depth steps and end
  // above everything seen so far.
  std::uint64_t orbits = 0;
  for (std::uint64_t start = 1; start <= budget.max_start && orbits < budget.max_families; ++start) {
    if (used.count(start)) continue;
    std::vector<BigInt> path{BigInt(start)};
    std::set<BigInt> seen{BigInt(start)};
    bool cycled = false;
    while (path.size() < 4 * depth) {
      auto v = image(path.back());
      if (!v) break;
      if (!seen.insert(*v).second) {
        cycled = true;
        break;
      }
      path.push_back(*v);
    }
    if (cycled || path.size() < depth) continue;
    if (path.back() <= *std::max_element(path.begin(), path.end() - 1)) continue;
    path.resize(depth);
    if (std::any_of(path.begin(), path.end(), [&](const BigInt& x) { return used.count(x) > 0; })) continue;
    used.insert(path.begin(), path.end());
    result.candidates.push_back({"orbit", path});
    ++orbits;
  }

  // Anti-orbits: depth-first backward chains through preimages found by scanning 1..scan_bound.
  const std::uint64_t scan = budget.scan_bound;
  std::vector<std::vector<std::uint64_t>> inverse(scan + 1);
  for (std::uint64_t n = 1; n <= scan; ++n) {
    auto v = image(n);
    if (v && *v <= scan) inverse[static_cast<std::uint64_t>(*v)].push_back(n);
  }
  std::uint64_t antis = 0;
  for (std::uint64_t start = 1; start <= std::min(budget.max_start, scan) && antis < budget.max_families; ++start) {
    if (used.count(start)) continue;
    std::vector<std::uint64_t> chain{start};
    std::uint64_t expansions = 0;
    std::function<bool()> extend = [&]() -> bool {
      if (chain.size() >= depth) return true;
      if (++expansions > 10'000) return false;
      for (std::uint64_t pre : inverse[chain.back()]) {
        if (used.count(pre) || std::find(chain.begin(), chain.end(), pre) != chain.end()) continue;
        chain.push_back(pre);
        if (extend()) return true;
        chain.pop_back();
      }
      return false;
    };
    if (!extend()) continue;
    SearchCandidate c{"anti-orbit", {}};
    for (auto x : chain) {
      c.prefix.emplace_back(x);
      used.insert(x);
    }
    result.candidates.push_back(std::move(c));
    ++antis;
  }
  result.notes.push_back("preimages searched in 1.." + std::to_string(scan) + " only");
  return result;
}

}  // namespace arithdyn
