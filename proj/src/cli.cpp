#include "arithdyn/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "arithdyn/arithfun.hpp"
#include "arithdyn/config.hpp"
#include "arithdyn/dynamics.hpp"
#include "arithdyn/entropy.hpp"
#include "arithdyn/preimage.hpp"
#include "arithdyn/primes.hpp"
#include "arithdyn/topology.hpp"

#ifndef ARITHDYN_VERSION
#define ARITHDYN_VERSION "dev"
#endif

namespace arithdyn::cli {

namespace {

using json = nlohmann::json;

constexpr const char* kSchema = "arithdyn.report/1";

struct Options {
  std::string fn;
  std::optional<unsigned> k;
  std::string n;
  std::string seeds;
  std::uint64_t families = 0;
  std::uint64_t depth = 0;
  std::uint64_t horizon = 0;
  std::uint64_t bound = 0;
  std::string format = "text";
  std::string config;
  bool no_timestamp = false;
  std::string scheme;
  std::string lemma;
  bool list = false;
  std::string topology = "tau-bar";
  std::string mode = "ambient";
  std::string table;
  std::string partition = "odd-even";
};

struct Report {
  std::string command;
  json parameters = json::object();
  json results = json::object();
  Status status = Status::INFO;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::uint64_t pick(std::uint64_t given, std::uint64_t fallback) { return given != 0 ? given : fallback; }

json number(const BigInt& v) {
  if (auto small = to_u64(v)) return *small;
  return v.str();
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
  if (text.empty()) throw UsageError(std::string("missing --") + what);
  auto v = to_u64(parse_natural(text));
  if (!v) throw UsageError(std::string("--") + what + " is too large");
  return *v;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_u64(item, "seeds"));
  }
  if (out.empty()) throw UsageError("--seeds needs at least one natural");
  return out;
}

FunctionId function_or(const Options& o, const FunctionId& fallback) {
  if (o.fn.empty()) {
    if (o.k) {
      FunctionId f{fallback.family, *o.k};
      validate(f);
      return f;
    }
    return fallback;
  }
  return parse_function(o.fn, o.k);
}

FunctionId required_function(const Options& o) {
  if (o.fn.empty()) throw UsageError("missing --fn");
  return parse_function(o.fn, o.k);
}

json term_json(const FactoredNatural& x) {
  json j;
  j["factored"] = x.to_string();
  std::optional<BigInt> v;
  try {
    v = x.to_integer(4096);
  } catch (const BudgetExceeded&) {
  }
  j["value"] = v ? number(*v) : json(nullptr);
  return j;
}

json report_json(const VerificationReport& r) {
  json j;
  j["lemma_id"] = r.lemma_id;
  j["families_checked"] = r.families_checked;
  j["depth"] = r.depth;
  j["status"] = status_name(r.status);
  if (r.certified_bound) j["certified_bound"] = *r.certified_bound;
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"family", c.family}, {"position", c.position}, {"expected", c.expected}, {"actual", c.actual}};
  }
  if (!r.witnesses.empty()) j["witnesses"] = r.witnesses;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

Report from_verification(const std::string& command, const VerificationReport& r) {
  Report rep;
  rep.command = command;
  rep.results = report_json(r);
  rep.status = r.status;
  return rep;
}

json limits_json() {
  const auto& l = limits();
  return {{"sieve_bound", l.sieve_bound},
          {"prime_index_budget", l.prime_index_budget},
          {"oracle_budget", l.oracle_budget},
          {"oracle_n_max", l.oracle_n_max},
          {"bit_budget", l.bit_budget},
          {"run_expand_limit", l.run_expand_limit},
          {"inverse_phi_max", l.inverse_phi_max},
          {"identity_k_max", l.identity_k_max},
          {"depth_caps",
           {{"omega_anti", l.depth_caps.omega_anti},
            {"d_anti", l.depth_caps.d_anti},
            {"small_omega_anti", l.depth_caps.small_omega_anti},
            {"other", l.depth_caps.other}}}};
}

void load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  Limits l = limits();
  auto take = [&](const json& obj, const std::string& key, auto& field) {
    if (obj.contains(key)) field = obj.at(key).get<std::remove_reference_t<decltype(field)>>();
  };
  static const std::vector<std::string> known = {"sieve_bound",    "prime_index_budget", "oracle_budget",
                                                 "oracle_n_max",   "bit_budget",         "run_expand_limit",
                                                 "inverse_phi_max", "identity_k_max",    "depth_caps"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw UsageError("config: unknown key " + key);
  }
  take(j, "sieve_bound", l.sieve_bound);
  take(j, "prime_index_budget", l.prime_index_budget);
  take(j, "oracle_budget", l.oracle_budget);
  take(j, "oracle_n_max", l.oracle_n_max);
  take(j, "bit_budget", l.bit_budget);
  take(j, "run_expand_limit", l.run_expand_limit);
  take(j, "inverse_phi_max", l.inverse_phi_max);
  take(j, "identity_k_max", l.identity_k_max);
  if (j.contains("depth_caps")) {
    const auto& caps = j.at("depth_caps");
    take(caps, "omega_anti", l.depth_caps.omega_anti);
    take(caps, "d_anti", l.depth_caps.d_anti);
    take(caps, "small_omega_anti", l.depth_caps.small_omega_anti);
    take(caps, "other", l.depth_caps.other);
  }
  set_limits(l);
}

// ---- commands ----

Report cmd_eval(const Options& o) {
  const FunctionId f = required_function(o);
  const BigInt n = parse_natural(o.n.empty() ? throw UsageError("missing --n") : o.n);
  if (n < 1) throw UsageError("--n must be >= 1");
  Report r;
  r.command = "eval";
  r.parameters = {{"fn", f.name()}, {"n", number(n)}};
  const Value v = eval(f, factorize(n));
  auto explicit_value = v.to_integer();
  r.results = {{"function", f.name()}, {"n", number(n)}, {"value", explicit_value ? number(*explicit_value) : json(v.to_string())}};
  if (!v.is_count()) r.results["factored"] = v.factored().to_string();
  return r;
}

Report cmd_oracle_eval(const Options& o) {
  const FunctionId f = required_function(o);
  const std::uint64_t n = parse_u64(o.n, "n");
  if (n < 1) throw UsageError("--n must be >= 1");
  Report r;
  r.command = "oracle-eval";
  r.parameters = {{"fn", f.name()}, {"n", n}};
  const BigInt oracle = eval_oracle(f, n);
  const BigInt closed = eval(f, BigInt(n));
  r.results = {{"function", f.name()}, {"n", n}, {"oracle", number(oracle)}, {"closed_form", number(closed)}};
  r.status = oracle == closed ? Status::PASS : Status::FAIL;
  if (r.status == Status::FAIL)
    r.results["counterexample"] = {{"family", f.name()}, {"position", n}, {"expected", oracle.str()}, {"actual", closed.str()}};
  return r;
}

json preimage_json(const PreimageResult& p) {
  return {{"target", p.target},
          {"members", p.members},
          {"completeness", p.complete() ? "COMPLETE" : "BOUNDED_SEARCH"},
          {"bound", p.bound}};
}

Report cmd_preimage(const Options& o) {
  const FunctionId f = required_function(o);
  const std::uint64_t m = parse_u64(o.n, "n");
  Report r;
  r.command = "preimage";
  r.parameters = {{"fn", f.name()}, {"n", m}};
  if (f == FunctionId::phi()) {
    r.results = preimage_json(inverse_phi(m));
  } else if (is_expansive_family(f)) {
    r.results = preimage_json(preimage_expansive(f, m));
  } else if (f == FunctionId::phi_star()) {
    if (o.bound == 0) throw UsageError("phi* preimages need --bound (only a bounded search is possible)");
    r.parameters["bound"] = o.bound;
    r.results = preimage_json(bounded_preimage(f, m, o.bound));
  } else {
    throw NotFiniteFibre(f.name() + " is not finite fibre; see verify-lemma nonfinite-fibre");
  }
  return r;
}

Report cmd_inverse_phi(const Options& o) {
  const std::uint64_t m = parse_u64(o.n, "n");
  Report r;
  r.command = "inverse-phi";
  r.parameters = {{"n", m}};
  r.results = preimage_json(inverse_phi(m));
  return r;
}

Report cmd_phi_bound(const Options& o) {
  const std::uint64_t m = parse_u64(o.n, "n");
  Report r;
  r.command = "phi-bound";
  r.parameters = {{"n", m}};
  const auto b = phi_bound(m);
  r.results = term_json(b);
  if (auto v = b.to_integer()) r.results["digits"] = v->str().size();
  return r;
}

Report cmd_orbit(const Options& o) {
  const FunctionId f = required_function(o);
  const BigInt n = parse_natural(o.n.empty() ? throw UsageError("missing --n") : o.n);
  if (n < 1) throw UsageError("--n must be >= 1");
  const std::uint64_t depth = pick(o.depth, 10);
  Report r;
  r.command = "orbit";
  r.parameters = {{"fn", f.name()}, {"n", number(n)}, {"depth", depth}};
  std::vector<FactoredNatural> terms{factorize(n)};
  std::map<std::string, std::size_t> seen{{terms.front().to_string(), 0}};
  json rows = json::array();
  rows.push_back(term_json(terms.front()));
  for (std::uint64_t i = 1; i < depth; ++i) {
    auto next = eval(f, terms.back()).factored();
    rows.push_back(term_json(next));
    auto [it, fresh] = seen.emplace(next.to_string(), i);
    if (!fresh) {
      r.results["cycle"] = {{"enters_at", it->second + 1}, {"detected_at", i + 1}};
      break;
    }
    terms.push_back(std::move(next));
  }
  r.results["terms"] = rows;
  return r;
}

Report cmd_family(const Options& o) {
  if (o.scheme.empty()) throw UsageError("missing --scheme");
  const FamilySpec spec{parse_scheme(o.scheme), o.k.value_or(1)};
  const std::uint64_t depth = pick(o.depth, 5);
  Report r;
  r.command = "family";
  r.parameters = {{"scheme", scheme_name(spec.scheme)}, {"k", spec.index}, {"depth", depth}};
  json rows = json::array();
  for (const auto& t : family_terms(spec, depth)) rows.push_back(term_json(t));
  r.results = {{"family", spec.label()}, {"function", scheme_function(spec.scheme).name()}, {"terms", rows}};
  return r;
}

struct LemmaInfo {
  const char* id;
  const char* operation;
};

constexpr LemmaInfo kLemmas[] = {
    {"phi-antiorbit", "dynamics.verify_antiorbit + verify_disjoint (phi, 2^k 3^n)"},
    {"d-antiorbit", "dynamics.verify_antiorbit + verify_disjoint (d, x -> p^(x-1))"},
    {"omega-antiorbit", "dynamics.verify_antiorbit + verify_disjoint (Omega, x -> p^x)"},
    {"smallomega-antiorbit", "dynamics.verify_antiorbit + verify_disjoint (omega, prime runs)"},
    {"psi-orbit", "dynamics.verify_orbit + verify_disjoint (psi, 3^k 2^n)"},
    {"j2-orbit", "dynamics.verify_orbit + verify_disjoint (J_2, 2^(2^(n+1)k+2^n-1) 3)"},
    {"generic-note", "dynamics.generic_family_terms (psi and J_2 models)"},
    {"monotone-o-zero", "dynamics.classify_monotonicity, f(n) <= n"},
    {"monotone-a-zero", "dynamics.classify_monotonicity, f(n) >= n"},
    {"strict-o-positive", "dynamics.classify_monotonicity, f(n) > n for n > 1"},
    {"phi-finite-fibre", "preimage.inverse_phi against a scan and the explicit bound"},
    {"nonfinite-fibre", "preimage.nonfinite_fibre_witness (Omega, omega, d)"},
    {"tau-subset", "topology.min_open_backward inside 1..k"},
    {"taubar-subset", "topology.min_open_forward inside 1..k"},
    {"connected-forward", "topology.contains_one_forward"},
    {"separation", "topology.separation_check"},
    {"partition-example", "topology.partition_map"},
};

Report lemma_monotone(const Options& o, const std::string& id, const FunctionId& fallback,
                      std::function<bool(Monotonicity)> accept, const std::string& wanted) {
  const FunctionId f = function_or(o, fallback);
  const std::uint64_t bound = pick(o.bound, 1'000'000);
  const auto m = classify_monotonicity(f, bound);
  VerificationReport v;
  v.lemma_id = id;
  v.families_checked = 1;
  v.depth = bound;
  if (accept(m.kind)) {
    v.certified_bound = m.conclusions.empty() ? "" : m.conclusions.front();
    for (std::size_t i = 1; i < m.conclusions.size(); ++i) v.notes.push_back(m.conclusions[i]);
  } else {
    const std::uint64_t at = id == "monotone-o-zero" ? m.first_above.value_or(0) : m.first_not_above.value_or(0);
    v.fail({f.name(), at, wanted, monotonicity_name(m.kind)});
  }
  Report r = from_verification("verify-lemma", v);
  r.parameters = {{"lemma", id}, {"fn", f.name()}, {"bound", bound}};
  r.results["classification"] = monotonicity_name(m.kind);
  return r;
}

Report lemma_generic(const Options& o) {
  const std::uint64_t families = pick(o.families, 5);
  const std::uint64_t depth = pick(o.depth, 20);
  VerificationReport v;
  v.lemma_id = "generic-note";
  v.families_checked = 2 * families;
  v.depth = depth;
  for (Scheme s : {Scheme::PSI_ORBIT, Scheme::J2_ORBIT}) {
    const auto spec = s == Scheme::PSI_ORBIT ? psi_generic_spec(families) : j2_generic_spec(families);
    for (std::uint64_t k = 1; k <= families && v.passed(); ++k) {
      const auto got = generic_family_terms(spec, k - 1, depth);
      if (!got.report.passed()) {
        v.fail(*got.report.counterexample);
        break;
      }
      const auto want = family_terms({s, k}, depth);
      for (std::size_t i = 0; i < want.size(); ++i) {
        if (!identical(want[i], got.terms[i])) {
          v.fail({FamilySpec{s, k}.label(), i + 1, want[i].to_string(), got.terms[i].to_string()});
          break;
        }
      }
    }
  }
  if (v.passed()) v.certified_bound = "generic construction reproduces psi-orbit and j2-orbit families 1.." +
                                      std::to_string(families) + " at depth " + std::to_string(depth);
  Report r = from_verification("verify-lemma", v);
  r.parameters = {{"lemma", "generic-note"}, {"families", families}, {"depth", depth}};
  return r;
}

Report lemma_phi_finite_fibre(const Options& o) {
  const std::uint64_t max_m = pick(o.bound, 2000);
  constexpr std::uint64_t scan = 100'000;
  const FunctionTable table(FunctionId::phi(), scan);
  VerificationReport v;
  v.lemma_id = "phi-finite-fibre";
  v.families_checked = 1;
  v.depth = max_m;
  for (std::uint64_t m = 1; m <= max_m && v.passed(); ++m) {
    const auto inv = inverse_phi(m);
    std::vector<std::uint64_t> within;
    for (auto x : inv.members) {
      if (x <= scan) within.push_back(x);
    }
    const auto brute = table.preimages(m);
    if (!std::equal(within.begin(), within.end(), brute.begin(), brute.end())) {
      v.fail({"phi", m, "scan of 1.." + std::to_string(scan), "inverse_phi disagrees"});
      break;
    }
    if (m <= 50 && !inv.members.empty()) {
      const auto b = phi_bound(m).to_integer();
      if (b && inv.members.back() > *b) v.fail({"phi", m, "members <= " + b->str(), std::to_string(inv.members.back())});
    }
  }
  if (v.passed()) v.certified_bound = "phi^{-1}(m) complete and matches a scan of 1.." + std::to_string(scan) +
                                      " for m <= " + std::to_string(max_m);
  Report r = from_verification("verify-lemma", v);
  r.parameters = {{"lemma", "phi-finite-fibre"}, {"bound", max_m}};
  return r;
}

Report lemma_nonfinite(const Options& o) {
  const std::uint64_t count = o.n.empty() ? 10'000 : parse_u64(o.n, "n");
  VerificationReport v;
  v.lemma_id = "nonfinite-fibre";
  v.families_checked = 3;
  v.depth = count;
  const auto primes = nonfinite_fibre_witness(FunctionId::big_omega(), 1, count);
  for (auto p : primes) {
    const auto fac = sieve_factor(p);
    const bool ok = eval_small(FunctionId::small_omega(), fac) == 1 && eval_small(FunctionId::big_omega(), fac) == 1 &&
                    eval_small(FunctionId::d(), fac) == 2;
    if (!ok) {
      v.fail({"primes", p, "omega = Omega = 1, d = 2", "violated"});
      break;
    }
  }
  if (v.passed()) {
    v.certified_bound = "the first " + std::to_string(count) +
                        " primes lie in omega^{-1}(1), Omega^{-1}(1) and d^{-1}(2): no finite bound on these fibres";
    v.witnesses = {std::to_string(primes.front()), std::to_string(primes.back())};
  }
  Report r = from_verification("verify-lemma", v);
  r.parameters = {{"lemma", "nonfinite-fibre"}, {"n", count}};
  return r;
}

Report lemma_tau_subset(const Options& o) {
  const FunctionId f = function_or(o, FunctionId::psi());
  const std::uint64_t bound = pick(o.bound, 10'000);
  const FunctionTable table(f, bound);
  VerificationReport v;
  v.lemma_id = "tau-subset";
  v.families_checked = 1;
  v.depth = bound;
  for (std::uint64_t k = 1; k <= bound; ++k) {
    const auto s = min_open_backward(table, k);
    if (s.members.back() > k) {
      v.fail({f.name(), k, "V(k) inside 1.." + std::to_string(k), "contains " + s.members.back().str()});
      break;
    }
  }
  if (v.passed()) v.certified_bound = "V(k, tau_" + f.name() + ") inside {1..k} for k <= " + std::to_string(bound);
  Report r = from_verification("verify-lemma", v);
  r.parameters = {{"lemma", "tau-subset"}, {"fn", f.name()}, {"bound", bound}};
  return r;
}

Report lemma_taubar_subset(const Options& o) {
  const FunctionId f = function_or(o, FunctionId::phi());
  const std::uint64_t bound = pick(o.bound, 10'000);
  VerificationReport v;
  v.lemma_id = "taubar-subset";
  v.families_checked = 1;
  v.depth = bound;
  for (std::uint64_t k = 1; k <= bound; ++k) {
    const auto s = min_open_forward(f, k);
    if (s.completeness != SetCompleteness::COMPLETE || s.members.back() > k) {
      v.fail({f.name(), k, "V(k) inside 1.." + std::to_string(k), "contains " + s.members.back().str()});
      break;
    }
  }
  if (v.passed()) v.certified_bound = "V(k, tau-bar_" + f.name() + ") inside {1..k} for k <= " + std::to_string(bound);
  Report r = from_verification("verify-lemma", v);
  r.parameters = {{"lemma", "taubar-subset"}, {"fn", f.name()}, {"bound", bound}};
  return r;
}

std::vector<BlockDescriptor> named_partition(const std::string& name) {
  if (name == "odd-even") return {ResidueClass{2, 1}, ResidueClass{2, 0}};
  if (name == "mod3") return {ResidueClass{3, 0}, Complement{}};
  if (name == "all") return {Complement{}};
  throw UsageError("unknown partition " + name + " (odd-even, mod3, all)");
}

Report partition_report(const std::string& command, const std::string& name, std::uint64_t bound) {
  const auto blocks = named_partition(name);
  const auto p = partition_map(blocks, bound);
  Report r;
  r.command = command;
  r.parameters = {{"partition", name}, {"bound", bound}};
  json block_names = json::array();
  for (const auto& b : blocks) block_names.push_back(describe(b));
  json rows = json::array();
  for (std::size_t i = 0; i < p.components.size(); ++i) {
    const auto& c = p.components[i];
    rows.push_back({{"component", i + 1}, {"block", p.block_of[c.front()] + 1}, {"size", c.size()}, {"min", c.front()}, {"max", c.back()}});
  }
  r.results = {{"blocks", block_names},
               {"components", p.components.size()},
               {"nonempty_blocks", p.nonempty_blocks},
               {"refines_partition", p.refines_partition},
               {"boundary_elements", p.boundary.size()},
               {"rows", rows}};
  const bool ok = p.refines_partition && p.components.size() == p.nonempty_blocks;
  r.status = ok ? Status::PASS : Status::FAIL;
  if (!ok)
    r.results["counterexample"] = {{"family", name},
                                   {"position", bound},
                                   {"expected", std::to_string(p.nonempty_blocks) + " components, one per block"},
                                   {"actual", std::to_string(p.components.size()) + " components"}};
  return r;
}

Report cmd_verify_lemma(const Options& o) {
  if (o.list) {
    Report r;
    r.command = "verify-lemma";
    json rows = json::array();
    for (const auto& l : kLemmas) rows.push_back({{"id", l.id}, {"operation", l.operation}});
    r.results["rows"] = rows;
    return r;
  }
  const std::string& id = o.lemma;
  if (id.empty()) throw UsageError("verify-lemma needs a lemma id (see --list)");
  const std::map<std::string, std::tuple<Scheme, std::uint64_t, std::uint64_t>> schemes = {
      {"phi-antiorbit", {Scheme::PHI_ANTI, 20, 30}},      {"d-antiorbit", {Scheme::D_ANTI, 5, 5}},
      {"omega-antiorbit", {Scheme::OMEGA_ANTI, 5, 5}},    {"smallomega-antiorbit", {Scheme::SMALL_OMEGA_ANTI, 5, 6}},
      {"psi-orbit", {Scheme::PSI_ORBIT, 20, 30}},         {"j2-orbit", {Scheme::J2_ORBIT, 20, 30}},
  };
  if (auto it = schemes.find(id); it != schemes.end()) {
    const auto [scheme, fam, dep] = it->second;
    const std::uint64_t families = pick(o.families, fam), depth = pick(o.depth, dep);
    Report r = from_verification("verify-lemma", certify_scheme(scheme, families, depth));
    r.parameters = {{"lemma", id}, {"families", families}, {"depth", depth}};
    return r;
  }
  if (id == "generic-note") return lemma_generic(o);
  if (id == "monotone-o-zero")
    return lemma_monotone(o, id, FunctionId::phi(), [](Monotonicity m) { return m == Monotonicity::DECREASING_WEAK; },
                          "f(n) <= n");
  if (id == "monotone-a-zero")
    return lemma_monotone(
        o, id, FunctionId::psi(),
        [](Monotonicity m) { return m == Monotonicity::INCREASING_WEAK || m == Monotonicity::INCREASING_STRICT_ABOVE_1; },
        "f(n) >= n");
  if (id == "strict-o-positive")
    return lemma_monotone(o, id, FunctionId::psi(),
                          [](Monotonicity m) { return m == Monotonicity::INCREASING_STRICT_ABOVE_1; }, "f(n) > n for n > 1");
  if (id == "phi-finite-fibre") return lemma_phi_finite_fibre(o);
  if (id == "nonfinite-fibre") return lemma_nonfinite(o);
  if (id == "tau-subset") return lemma_tau_subset(o);
  if (id == "taubar-subset") return lemma_taubar_subset(o);
  if (id == "connected-forward") {
    const FunctionId f = function_or(o, FunctionId::phi());
    const std::uint64_t bound = pick(o.bound, 100'000);
    Report r = from_verification("verify-lemma", contains_one_forward(f, bound));
    r.parameters = {{"lemma", id}, {"fn", f.name()}, {"bound", bound}};
    return r;
  }
  if (id == "separation") {
    const FunctionId f = function_or(o, FunctionId::psi());
    const std::uint64_t bound = pick(o.bound, 100'000);
    Report r = from_verification("verify-lemma", separation_check(f, bound));
    r.parameters = {{"lemma", id}, {"fn", f.name()}, {"bound", bound}};
    return r;
  }
  if (id == "partition-example") {
    Report r = partition_report("verify-lemma", o.partition, pick(o.bound, 1000));
    r.parameters["lemma"] = id;
    return r;
  }
  throw UsageError("unknown lemma id " + id + " (see verify-lemma --list)");
}

json entropy_json(const EntropyEstimate& e) {
  json j = {{"function", e.function.name()},
            {"seeds", e.seeds},
            {"horizon", e.horizon},
            {"numerator", number(e.numerator)},
            {"value_text", e.numerator.str() + "/" + std::to_string(e.horizon)},
            {"value", e.value()},
            {"direction", e.direction == Direction::FORWARD ? "FORWARD" : "BACKWARD"},
            {"mode", e.mode == EntropyMode::AMBIENT ? "AMBIENT" : "CORE"}};
  j["stable_from"] = e.stable_from ? json(*e.stable_from) : json(nullptr);
  if (!e.notes.empty()) j["notes"] = e.notes;
  return j;
}

Report cmd_entropy(const Options& o, bool backward) {
  const FunctionId f = required_function(o);
  const auto seeds = parse_seeds(o.seeds);
  const std::uint64_t horizon = pick(o.horizon, 100);
  Report r;
  r.command = backward ? "centropy" : "entropy";
  r.parameters = {{"fn", f.name()}, {"seeds", seeds}, {"horizon", horizon}};
  if (backward) {
    if (o.mode != "ambient" && o.mode != "core") throw UsageError("--mode must be ambient or core");
    r.parameters["mode"] = o.mode;
    r.results = entropy_json(
        ent_cset_estimate(f, seeds, horizon, o.mode == "core" ? EntropyMode::CORE : EntropyMode::AMBIENT));
  } else {
    r.results = entropy_json(ent_set_estimate(f, seeds, horizon));
  }
  return r;
}

Report cmd_min_open(const Options& o) {
  const FunctionId f = required_function(o);
  const std::uint64_t x = parse_u64(o.n, "n");
  Report r;
  r.command = "min-open";
  r.parameters = {{"fn", f.name()}, {"n", x}, {"topology", o.topology}};
  MinimalOpenSet s;
  if (o.topology == "tau") {
    const std::uint64_t scan = pick(o.bound, 100'000);
    r.parameters["bound"] = scan;
    s = min_open_backward(f, x, scan);
  } else if (o.topology == "tau-bar") {
    s = min_open_forward(f, x);
  } else {
    throw UsageError("--topology must be tau or tau-bar");
  }
  json members = json::array();
  for (const auto& m : s.members) members.push_back(number(m));
  r.results = {{"point", x},
               {"members", members},
               {"size", s.members.size()},
               {"completeness", s.completeness == SetCompleteness::COMPLETE ? "COMPLETE" : "TRUNCATED"}};
  if (s.completeness == SetCompleteness::TRUNCATED) r.results["bound"] = s.bound;
  return r;
}

Report cmd_components(const Options& o) {
  const FunctionId f = required_function(o);
  const std::uint64_t bound = pick(o.bound, 100);
  Report r;
  r.command = "components";
  r.parameters = {{"fn", f.name()}, {"bound", bound}};
  const auto comps = window_components(FunctionTable(f, bound));
  json rows = json::array();
  for (std::size_t i = 0; i < comps.size(); ++i)
    rows.push_back({{"component", i + 1}, {"size", comps[i].size()}, {"min", comps[i].front()}, {"max", comps[i].back()}});
  r.results = {{"components", comps.size()}, {"rows", rows}};
  return r;
}

Report cmd_separation(const Options& o) {
  const FunctionId f = required_function(o);
  const std::uint64_t bound = pick(o.bound, 100'000);
  Report r = from_verification("separation", separation_check(f, bound));
  r.parameters = {{"fn", f.name()}, {"bound", bound}};
  return r;
}

Report cmd_search(const Options& o) {
  const FunctionId f = required_function(o);
  SearchBudget b;
  b.max_families = pick(o.families, b.max_families);
  b.max_depth = pick(o.depth, b.max_depth);
  b.max_start = pick(o.bound, b.max_start);
  const auto res = search_families(f, b);
  Report r;
  r.command = "search";
  r.parameters = {{"fn", f.name()}, {"families", b.max_families}, {"depth", b.max_depth}, {"bound", b.max_start}};
  json rows = json::array();
  for (const auto& c : res.candidates) {
    json prefix = json::array();
    for (const auto& x : c.prefix) prefix.push_back(number(x));
    rows.push_back({{"kind", c.kind}, {"prefix", prefix}});
  }
  r.results = {{"label", "EXPERIMENTAL"}, {"rows", rows}, {"notes", res.notes}};
  return r;
}

// ---- tables ----

Report table_orbit_numbers(const Options& o) {
  const std::uint64_t families = pick(o.families, 20), depth = pick(o.depth, 30), bound = pick(o.bound, 10'000);
  Report r;
  r.command = "table";
  r.parameters = {{"table", "orbit-numbers"}, {"families", families}, {"depth", depth}, {"bound", bound}};
  r.status = Status::PASS;
  json rows = json::array();
  auto zero_row = [&](const FunctionId& f, const char* which) {
    const auto m = classify_monotonicity(f, bound);
    const bool o_zero = m.kind == Monotonicity::DECREASING_WEAK;
    const bool a_zero = m.kind == Monotonicity::INCREASING_WEAK || m.kind == Monotonicity::INCREASING_STRICT_ABOVE_1;
    const bool ok = std::string(which) == "o" ? o_zero : a_zero;
    if (!ok) r.status = Status::FAIL;
    return json{{"function", f.name()}, {"quantity", which}, {"claim", std::string(which) + " = 0"},
                {"evidence", ok ? m.conclusions.front() : monotonicity_name(m.kind)}, {"status", ok ? "PASS" : "FAIL"}};
  };
  auto scheme_row = [&](Scheme s) {
    const std::uint64_t d = std::min(depth, depth_cap(s));
    const auto v = certify_scheme(s, families, d);
    if (!v.passed()) {
      r.status = Status::FAIL;
      if (!r.results.contains("counterexample")) r.results["counterexample"] = report_json(v)["counterexample"];
    }
    const std::string q = is_anti_scheme(s) ? "a" : "o";
    return json{{"function", scheme_function(s).name()}, {"quantity", q}, {"claim", q + " = +inf"},
                {"evidence", v.passed() ? *v.certified_bound : std::string("verification failed")},
                {"status", status_name(v.status)}};
  };
  // Row 1: phi, d, Omega, omega.
  rows.push_back(zero_row(FunctionId::phi(), "o"));
  rows.push_back(scheme_row(Scheme::PHI_ANTI));
  rows.push_back(zero_row(FunctionId::d(), "o"));
  rows.push_back(scheme_row(Scheme::D_ANTI));
  rows.push_back(zero_row(FunctionId::big_omega(), "o"));
  rows.push_back(scheme_row(Scheme::OMEGA_ANTI));
  rows.push_back(zero_row(FunctionId::small_omega(), "o"));
  rows.push_back(scheme_row(Scheme::SMALL_OMEGA_ANTI));
  // Row 2: phi*; a(phi*) is open.
  rows.push_back(zero_row(FunctionId::phi_star(), "o"));
  rows.push_back({{"function", "phi*"}, {"quantity", "a"}, {"claim", "open"}, {"evidence", "no verdict recorded"}, {"status", "INFO"}});
  // Row 3: J_2, psi.
  rows.push_back(scheme_row(Scheme::J2_ORBIT));
  rows.push_back(zero_row(FunctionId::jordan(2), "a"));
  rows.push_back(scheme_row(Scheme::PSI_ORBIT));
  rows.push_back(zero_row(FunctionId::psi(), "a"));
  // Row 4: sigma_k, psi_k, J_{k+2}.
  for (unsigned k = 1; k <= 3; ++k) {
    for (const auto& f : {FunctionId::sigma(k), FunctionId::psi_k(k), FunctionId::jordan(k + 2)}) {
      const auto m = classify_monotonicity(f, bound);
      const bool ok = m.kind == Monotonicity::INCREASING_STRICT_ABOVE_1;
      if (!ok) r.status = Status::FAIL;
      rows.push_back({{"function", f.name()}, {"quantity", "o, a"}, {"claim", "o > 0, a = 0"},
                      {"evidence", ok ? "f(n) > n for 1 < n <= " + std::to_string(bound) + " (conditional)" : monotonicity_name(m.kind)},
                      {"status", ok ? "PASS" : "FAIL"}});
    }
  }
  r.results["rows"] = rows;
  return r;
}

Report table_entropies(const Options& o) {
  const std::uint64_t horizon = pick(o.horizon, 500);
  Report r;
  r.command = "table";
  r.parameters = {{"table", "entropies"}, {"horizon", horizon}};
  json rows = json::array();
  auto add = [&](const EntropyEstimate& e, const std::string& claim) {
    rows.push_back({{"function", e.function.name()},
                    {"quantity", e.direction == Direction::FORWARD ? "ent_set" : "ent_cset"},
                    {"claim", claim},
                    {"seeds", e.seeds},
                    {"horizon", e.horizon},
                    {"partial_value", e.numerator.str() + "/" + std::to_string(e.horizon)}});
  };
  std::vector<std::uint64_t> small;
  for (std::uint64_t n = 1; n <= 30; ++n) small.push_back(n);
  const std::vector<std::uint64_t> psi_seeds = {6, 18, 54, 162, 486};
  // Expansive orbits leave the factoring range after a few dozen steps.
  auto guarded = [&](const FunctionId& f, const char* quantity, const std::string& claim, auto estimate) {
    try {
      add(estimate(), claim);
    } catch (const BudgetExceeded& e) {
      rows.push_back({{"function", f.name()}, {"quantity", quantity}, {"claim", claim}, {"partial_value", std::string("budget: ") + e.what()}});
    }
  };
  add(ent_set_estimate(FunctionId::phi(), small, horizon), "0");
  add(ent_cset_estimate(FunctionId::phi(), {6}, std::min<std::uint64_t>(horizon, 6)), "+inf");
  add(ent_set_estimate(FunctionId::big_omega(), small, horizon), "0");
  rows.push_back({{"function", "Omega"}, {"quantity", "ent_cset"}, {"claim", "undefined (not finite fibre)"}});
  add(ent_set_estimate(FunctionId::small_omega(), small, horizon), "0");
  rows.push_back({{"function", "omega"}, {"quantity", "ent_cset"}, {"claim", "undefined (not finite fibre)"}});
  for (const auto& f : {FunctionId::psi(), FunctionId::jordan(2)}) {
    add(ent_set_estimate(f, psi_seeds, horizon), "+inf");
    add(ent_cset_estimate(f, {12}, horizon), "0");
  }
  for (const auto& f : {FunctionId::sigma(1), FunctionId::psi_k(2), FunctionId::jordan(3)}) {
    guarded(f, "ent_set", "> 0", [&] { return ent_set_estimate(f, {2}, std::min<std::uint64_t>(horizon, 50)); });
    add(ent_cset_estimate(f, {12}, horizon), "0");
  }
  r.results["rows"] = rows;
  r.results["notes"] = {"partial values at finite horizons; ent_cset uses ambient N"};
  return r;
}

Report table_connectivity(const Options& o) {
  const std::uint64_t bound = pick(o.bound, 10'000);
  Report r;
  r.command = "table";
  r.parameters = {{"table", "connectivity"}, {"bound", bound}};
  r.status = Status::PASS;
  json rows = json::array();
  auto add = [&](const FunctionId& f, const VerificationReport& v, const std::string& claim) {
    json row = {{"function", f.name()}, {"claim", claim}, {"check", v.lemma_id}, {"status", status_name(v.status)}};
    if (v.counterexample) row["witness"] = v.counterexample->actual;
    if (!v.passed()) r.status = Status::FAIL;
    if (!v.passed() && !r.results.contains("counterexample")) r.results["counterexample"] = report_json(v)["counterexample"];
    rows.push_back(row);
  };
  for (const auto& f : {FunctionId::phi(), FunctionId::phi_star(), FunctionId::small_omega(), FunctionId::big_omega(),
                        FunctionId::d()})
    add(f, contains_one_forward(f, bound), "connected");
  for (unsigned k = 1; k <= 3; ++k) {
    for (const auto& f : {FunctionId::sigma(k), FunctionId::psi_k(k), FunctionId::jordan(k + 1)})
      add(f, separation_check(f, bound), "disconnected");
  }
  r.results["rows"] = rows;
  return r;
}

Report cmd_table(const Options& o) {
  if (o.table == "orbit-numbers") return table_orbit_numbers(o);
  if (o.table == "entropies") return table_entropies(o);
  if (o.table == "connectivity") return table_connectivity(o);
  throw UsageError("unknown table " + o.table + " (orbit-numbers, entropies, connectivity)");
}

// ---- output ----

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_table(const json& v) { return v.is_array() && !v.empty() && v.front().is_object(); }

void write_table(const json& rows, std::ostream& out, const std::string& indent) {
  std::vector<std::string> cols;
  for (const auto& row : rows) {
    for (const auto& [k, _] : row.items()) {
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& c : cols) width.push_back(c.size());
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::string s = row.contains(cols[i]) ? scalar_text(row[cols[i]]) : "";
      width[i] = std::max(width[i], s.size());
      line.push_back(std::move(s));
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    out << indent;
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << std::left << std::setw(static_cast<int>(i + 1 < line.size() ? width[i] + 2 : 0)) << line[i];
    }
    out << '\n';
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
}

void write_text(const json& j, std::ostream& out, const std::string& indent) {
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      out << indent << key << ":\n";
      write_text(v, out, indent + "  ");
    } else if (is_table(v)) {
      out << indent << key << ":\n";
      write_table(v, out, indent + "  ");
    } else if (v.is_array()) {
      out << indent << key << ": ";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
      out << '\n';
    } else {
      out << indent << key << ": " << scalar_text(v) << '\n';
    }
  }
}

std::string csv_cell(const json& v) {
  std::string s = scalar_text(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_csv(const Report& r, std::ostream& out) {
  for (const auto& [key, v] : r.results.items()) {
    if (!is_table(v)) continue;
    std::vector<std::string> cols;
    for (const auto& row : v) {
      for (const auto& [k, _] : row.items()) {
        if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
      }
    }
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& row : v) {
      for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << (row.contains(cols[i]) ? csv_cell(row[cols[i]]) : "");
      out << '\n';
    }
    return;
  }
  out << "key,value\n";
  for (const auto& [key, v] : r.results.items()) out << key << ',' << csv_cell(v.is_array() || v.is_object() ? json(v.dump()) : v) << '\n';
  out << "status," << status_name(r.status) << '\n';
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

void emit(const Report& r, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    json j;
    j["schema"] = kSchema;
    j["command"] = r.command;
    j["parameters"] = r.parameters;
    j["results"] = r.results;
    j["status"] = status_name(r.status);
    j["provenance"] = {{"tool", "arithdyn"}, {"version", ARITHDYN_VERSION}, {"config", limits_json()}};
    if (!o.no_timestamp) j["timestamp"] = timestamp();
    out << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    write_csv(r, out);
  } else {
    out << "command: " << r.command << '\n';
    write_text(r.parameters, out, "  ");
    json results = r.results;
    results.erase("status");
    write_text(results, out, "");
    out << "status: " << status_name(r.status) << '\n';
  }
}

int exit_code(Status s) { return s == Status::FAIL ? 1 : 0; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Arithmetic dynamics verification toolkit", "arithdyn"};
  app.set_version_flag("--version", std::string(ARITHDYN_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--config", o.config, "JSON file with limits (sieve_bound, oracle_budget, bit_budget, depth_caps, ...)");
  app.add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp from JSON reports");

  auto add_fn = [&](CLI::App* sub) {
    sub->add_option("--fn", o.fn, "Function: phi, J_k, psi, psi_k, phi*, Omega, omega, d, d_l, sigma_k");
    sub->add_option("--k,--l", o.k, "Parameter k or l of the function (or family index)");
  };
  std::map<std::string, std::function<Report()>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::function<Report()> h) {
    handlers[name] = std::move(h);
    return app.add_subcommand(name, help);
  };

  auto* s = sub("eval", "Evaluate f(n) by its closed form", [&] { return cmd_eval(o); });
  add_fn(s);
  s->add_option("--n", o.n, "Argument (< 2^128)");
  s = sub("oracle-eval", "Evaluate f(n) from its definition and compare", [&] { return cmd_oracle_eval(o); });
  add_fn(s);
  s->add_option("--n", o.n, "Argument");
  s = sub("preimage", "Enumerate f^{-1}(n)", [&] { return cmd_preimage(o); });
  add_fn(s);
  s->add_option("--n", o.n, "Target value");
  s->add_option("--bound", o.bound, "Search bound (phi* only)");
  s = sub("inverse-phi", "Complete phi^{-1}(n)", [&] { return cmd_inverse_phi(o); });
  s->add_option("--n", o.n, "Target value");
  s = sub("phi-bound", "Explicit upper bound for phi^{-1}(n)", [&] { return cmd_phi_bound(o); });
  s->add_option("--n", o.n, "Target value");
  s = sub("orbit", "Forward orbit n, f(n), f(f(n)), ...", [&] { return cmd_orbit(o); });
  add_fn(s);
  s->add_option("--n", o.n, "Starting point");
  s->add_option("--depth", o.depth, "Number of terms");
  s = sub("family", "Terms of a built-in orbit or anti-orbit family", [&] { return cmd_family(o); });
  s->add_option("--scheme", o.scheme, "phi-anti, d-anti, omega-anti, smallomega-anti, psi-orbit, j2-orbit");
  s->add_option("--k", o.k, "Family index");
  s->add_option("--depth", o.depth, "Number of terms");
  s = sub("verify-lemma", "Check one claim on a finite window", [&] { return cmd_verify_lemma(o); });
  s->add_option("lemma", o.lemma, "Lemma id");
  s->add_flag("--list", o.list, "List lemma ids");
  add_fn(s);
  s->add_option("--n", o.n, "Witness count (nonfinite-fibre)");
  s->add_option("--families", o.families, "Number of families");
  s->add_option("--depth", o.depth, "Depth per family");
  s->add_option("--bound", o.bound, "Window bound");
  s->add_option("--partition", o.partition, "odd-even, mod3 or all (partition-example)");
  s = sub("entropy", "Partial value of the set-theoretical entropy", [&] { return cmd_entropy(o, false); });
  add_fn(s);
  s->add_option("--seeds", o.seeds, "Comma-separated seed set");
  s->add_option("--horizon", o.horizon, "Horizon n");
  s = sub("centropy", "Partial value of the contravariant entropy", [&] { return cmd_entropy(o, true); });
  add_fn(s);
  s->add_option("--seeds", o.seeds, "Comma-separated seed set");
  s->add_option("--horizon", o.horizon, "Horizon n");
  s->add_option("--mode", o.mode, "ambient or core");
  s = sub("min-open", "Minimal open neighbourhood of a point", [&] { return cmd_min_open(o); });
  add_fn(s);
  s->add_option("--n", o.n, "Point");
  s->add_option("--topology", o.topology, "tau (preimage closure) or tau-bar (forward orbit)");
  s->add_option("--bound", o.bound, "Scan bound for tau");
  s = sub("components", "Connected components of n -- f(n) on 1..bound", [&] { return cmd_components(o); });
  add_fn(s);
  s->add_option("--bound", o.bound, "Window bound");
  s = sub("separation", "Check the {1}, N\\{1} separation hypothesis", [&] { return cmd_separation(o); });
  add_fn(s);
  s->add_option("--bound", o.bound, "Window bound");
  s = sub("partition-demo", "Successor map of a partition and its components",
          [&] { return partition_report("partition-demo", o.partition, pick(o.bound, 1000)); });
  s->add_option("--partition", o.partition, "odd-even, mod3 or all");
  s->add_option("--bound", o.bound, "Window bound");
  s = sub("table", "Verified-at-depth tables", [&] { return cmd_table(o); });
  s->add_option("name", o.table, "orbit-numbers, entropies or connectivity")->required();
  s->add_option("--families", o.families, "Families per scheme");
  s->add_option("--depth", o.depth, "Depth per family");
  s->add_option("--horizon", o.horizon, "Entropy horizon");
  s->add_option("--bound", o.bound, "Window bound for monotonicity and connectivity");
  s = sub("search", "Exploratory search for disjoint orbit prefixes", [&] { return cmd_search(o); });
  add_fn(s);
  s->add_option("--families", o.families, "Maximum families");
  s->add_option("--depth", o.depth, "Prefix length");
  s->add_option("--bound", o.bound, "Largest starting point");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << ARITHDYN_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (!o.config.empty()) load_config(o.config);
    const std::string name = app.get_subcommands().front()->get_name();
    const Report r = handlers.at(name)();
    emit(r, o, out);
    return exit_code(r.status);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    if (o.format == "json") {
      json j = {{"schema", kSchema}, {"status", "ERROR"}, {"error", e.what()}};
      out << j.dump(2) << '\n';
    }
    return 2;
  }
}

}  // namespace arithdyn::cli
