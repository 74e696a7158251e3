#include "arithdyn/entropy.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "arithdyn/config.hpp"
#include "arithdyn/preimage.hpp"

namespace arithdyn {

namespace {

std::string horizon_note(std::uint64_t reached, std::uint64_t horizon) {
  return "stopped after step " + std::to_string(reached) + " of " + std::to_string(horizon);
}

std::vector<std::uint64_t> complete_preimage(const FunctionId& f, std::uint64_t m) {
  if (f == FunctionId::phi()) return inverse_phi(m).members;
  if (is_expansive_family(f)) return preimage_expansive(f, m).members;
  if (f.family == Family::BigOmega || f.family == Family::SmallOmega || f.family == Family::DivisorCount)
    throw NotFiniteFibre(f.name() + " has infinite fibres");
  throw std::invalid_argument("no complete preimage enumeration for " + f.name());
}

}  // namespace

double EntropyEstimate::value() const {
  return horizon == 0 ? 0.0 : static_cast<double>(numerator) / static_cast<double>(horizon);
}

EntropyEstimate ent_set_estimate(const FunctionId& f, const std::vector<std::uint64_t>& seeds, std::uint64_t horizon) {
  validate(f);
  if (horizon == 0) throw std::invalid_argument("entropy: horizon must be >= 1");
  EntropyEstimate est;
  est.function = f;
  est.seeds = seeds;
  est.horizon = horizon;
  est.direction = Direction::FORWARD;

  std::map<std::string, FactoredNatural> layer, seen;
  for (auto s : seeds) {
    if (s == 0) throw std::invalid_argument("entropy: seeds must be >= 1");
    auto x = factorize(s);
    layer.emplace(x.to_string(), std::move(x));
  }
  for (std::uint64_t step = 0; step < horizon; ++step) {
    const std::size_t before = seen.size();
    seen.insert(layer.begin(), layer.end());
    if (step > 0 && seen.size() == before) {
      est.stable_from = step;  // f^step(A) adds nothing, so no later layer can
      break;
    }
    if (step + 1 == horizon) break;
    std::map<std::string, FactoredNatural> next;
    for (const auto& [key, x] : layer) {
      try {
        auto y = eval(f, x).factored();
        next.emplace(y.to_string(), std::move(y));
      } catch (const BudgetExceeded& e) {
        throw BudgetExceeded(std::string(e.what()) + "; " + horizon_note(step, horizon));
      }
    }
    layer = std::move(next);
  }
  est.numerator = seen.size();
  return est;
}

EntropyEstimate ent_cset_estimate(const FunctionId& f, const std::vector<std::uint64_t>& seeds,
                                  std::uint64_t horizon, EntropyMode mode) {
  validate(f);
  if (horizon == 0) throw std::invalid_argument("entropy: horizon must be >= 1");
  if (mode == EntropyMode::CORE && !is_expansive_family(f))
    throw std::invalid_argument("CORE mode needs an expansive function");
  EntropyEstimate est;
  est.function = f;
  est.seeds = seeds;
  est.horizon = horizon;
  est.direction = Direction::BACKWARD;
  est.mode = mode;
  est.notes.push_back(mode == EntropyMode::AMBIENT ? "ambient N, not restricted to the surjective core"
                                                   : "restricted to the surjective core");

  auto keep = [&](std::uint64_t x) {
    return mode == EntropyMode::AMBIENT || surjective_core_membership(f, x) == CoreMembership::IN_CORE;
  };
  std::set<std::uint64_t> layer, seen;
  for (auto s : seeds) {
    if (s == 0) throw std::invalid_argument("entropy: seeds must be >= 1");
    if (keep(s)) layer.insert(s);
  }
  std::map<std::uint64_t, std::vector<std::uint64_t>> memo;
  for (std::uint64_t step = 0; step < horizon; ++step) {
    const std::size_t before = seen.size();
    seen.insert(layer.begin(), layer.end());
    if (step > 0 && seen.size() == before) {
      est.stable_from = step;
      break;
    }
    if (step + 1 == horizon) break;
    std::set<std::uint64_t> next;
    for (auto y : layer) {
      auto it = memo.find(y);
      if (it == memo.end()) {
        try {
          it = memo.emplace(y, complete_preimage(f, y)).first;
        } catch (const BudgetExceeded& e) {
          throw BudgetExceeded(std::string(e.what()) + "; " + horizon_note(step, horizon));
        }
      }
      for (auto x : it->second) {
        if (keep(x)) next.insert(x);
      }
    }
    layer = std::move(next);
  }
  est.numerator = seen.size();
  return est;
}

CoreMembership surjective_core_membership(const FunctionId& f, std::uint64_t x) {
  validate(f);
  if (!is_expansive_family(f)) throw std::invalid_argument(f.name() + " is not an expansive function");
  if (x == 0) throw std::invalid_argument("core membership: x must be >= 1");
  std::vector<std::uint64_t> value(x + 1, 0);
  std::vector<std::vector<std::uint64_t>> inverse(x + 1);
  for (std::uint64_t n = 1; n <= x; ++n) {
    const BigInt v = eval_small(f, sieve_factor(n));
    if (v < n) throw std::invalid_argument(f.name() + " is not expansive at n = " + std::to_string(n));
    if (v <= x) {
      value[n] = static_cast<std::uint64_t>(v);
      inverse[value[n]].push_back(n);
    }
  }
  std::vector<bool> visited(x + 1, false);
  std::vector<std::uint64_t> stack{x};
  visited[x] = true;
  while (!stack.empty()) {
    const std::uint64_t y = stack.back();
    stack.pop_back();
    if (value[y] == y) return CoreMembership::IN_CORE;
    for (auto n : inverse[y]) {
      if (!visited[n]) {
        visited[n] = true;
        stack.push_back(n);
      }
    }
  }
  return CoreMembership::NOT_IN_CORE;
}

}  // namespace arithdyn
