// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <array>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arithdyn/arithfun.hpp"
#include "arithdyn/dynamics.hpp"
#include "arithdyn/entropy.hpp"
#include "arithdyn/preimage.hpp"
#include "arithdyn/primes.hpp"
#include "arithdyn/topology.hpp"

#ifndef ARITHDYN_CLI_PATH
#error "ARITHDYN_CLI_PATH must name the built command-line tool"
#endif

using namespace arithdyn;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail.clear();
      if (!detail.empty()) detail += "; ";
      detail += what;
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::fixed << s << " s";
  return ss.str();
}

Outcome criterion_oracle() {
  Outcome o;
  const auto t0 = Clock::now();
  std::vector<std::pair<FunctionId, std::uint64_t>> cases;
  for (unsigned k = 1; k <= 3; ++k) {
    cases.emplace_back(FunctionId::jordan(k), k == 1 ? 500 : 200);
    cases.emplace_back(FunctionId::psi_k(k), 500);
    cases.emplace_back(FunctionId::sigma(k), 500);
  }
  for (unsigned l = 2; l <= 3; ++l) cases.emplace_back(FunctionId::divisors(l), 500);
  cases.emplace_back(FunctionId::phi_star(), 500);
  cases.emplace_back(FunctionId::big_omega(), 500);
  cases.emplace_back(FunctionId::small_omega(), 500);
  std::uint64_t mismatches = 0, checked = 0;
  for (const auto& [f, top] : cases) {
    for (std::uint64_t n = 1; n <= top; ++n, ++checked) {
      const BigInt closed = eval(f, BigInt(n));
      const BigInt oracle = eval_oracle(f, n);
      if (closed != oracle) {
        if (mismatches++ == 0) o.require(false, f.name() + "(" + std::to_string(n) + ")");
      }
    }
  }
  const double s = seconds_since(t0);
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.require(s < 60, "runtime " + fmt_seconds(s));
  if (o.pass) o.detail = std::to_string(checked) + " evaluations, 0 mismatches, " + fmt_seconds(s);
  return o;
}

Outcome criterion_identity() {
  Outcome o;
  const auto t0 = Clock::now();
  for (unsigned k = 1; k <= 3; ++k) {
    const auto r = psi_jordan_identity_check(k, 100'000);
    if (!r.passed()) o.require(false, "k = " + std::to_string(k) + " at n = " + std::to_string(r.counterexample->position));
  }
  const double s = seconds_since(t0);
  o.require(s < 30, "runtime " + fmt_seconds(s));
  if (o.pass) o.detail = "psi_k * J_k = J_2k for k = 1..3, n <= 10^5, " + fmt_seconds(s);
  return o;
}

Outcome criterion_monotone() {
  Outcome o;
  const auto t0 = Clock::now();
  constexpr std::uint64_t N = 1'000'000;
  const std::vector<FunctionId> below = {FunctionId::phi(), FunctionId::phi_star(), FunctionId::big_omega(),
                                         FunctionId::small_omega(), FunctionId::d()};
  std::vector<FunctionId> above = {FunctionId::psi(), FunctionId::jordan(2)};
  for (unsigned k = 1; k <= 3; ++k) {
    above.push_back(FunctionId::sigma(k));
    above.push_back(FunctionId::psi_k(k));
    above.push_back(FunctionId::jordan(k + 2));
  }
  for (std::uint64_t n = 1; n <= N; ++n) {
    const auto fac = sieve_factor(n);
    for (const auto& f : below) {
      if (eval_small(f, fac) > n) o.require(false, f.name() + "(" + std::to_string(n) + ") > n");
    }
    if (n < 2) continue;
    for (const auto& f : above) {
      if (eval_small(f, fac) <= n) o.require(false, f.name() + "(" + std::to_string(n) + ") <= n");
    }
    if (!o.pass) break;
  }
  const double s = seconds_since(t0);
  o.require(s < 120, "runtime " + fmt_seconds(s));
  if (o.pass)
    o.detail = std::to_string(below.size()) + " functions f(n) <= n, " + std::to_string(above.size()) +
               " functions f(n) > n (n >= 2), n <= 10^6, " + fmt_seconds(s);
  return o;
}

Outcome certify(const std::vector<std::tuple<Scheme, std::uint64_t, std::uint64_t>>& runs) {
  Outcome o;
  std::string summary;
  for (const auto& [scheme, families, depth] : runs) {
    const auto t0 = Clock::now();
    const auto r = certify_scheme(scheme, families, depth);
    const double s = seconds_since(t0);
    const std::string name = scheme_name(scheme);
    if (!r.passed()) {
      const auto& c = *r.counterexample;
      o.require(false, name + " FAIL at " + c.family + " position " + std::to_string(c.position));
    }
    o.require(s < 10, name + " took " + fmt_seconds(s));
    if (!summary.empty()) summary += "; ";
    summary += name + " " + std::to_string(families) + "x" + std::to_string(depth) + " (" +
               (r.certified_bound ? *r.certified_bound : std::string("no bound")) + ", " + fmt_seconds(s) + ")";
  }
  if (o.pass) o.detail = summary;
  return o;
}

Outcome criterion_generic() {
  Outcome o;
  constexpr std::uint64_t families = 5, depth = 20;
  for (Scheme s : {Scheme::PSI_ORBIT, Scheme::J2_ORBIT}) {
    const auto spec = s == Scheme::PSI_ORBIT ? psi_generic_spec(families) : j2_generic_spec(families);
    for (std::uint64_t k = 1; k <= families; ++k) {
      const auto got = generic_family_terms(spec, k - 1, depth);
      const auto want = family_terms({s, k}, depth);
      o.require(got.report.passed(), scheme_name(s) + " family " + std::to_string(k) + " generic report failed");
      o.require(got.terms.size() == want.size(), scheme_name(s) + " term count");
      for (std::size_t i = 0; i < std::min(want.size(), got.terms.size()); ++i) {
        if (!identical(want[i], got.terms[i])) {
          o.require(false, scheme_name(s) + " family " + std::to_string(k) + " term " + std::to_string(i + 1));
          break;
        }
      }
    }
  }
  if (o.pass) o.detail = "psi and J_2 models reproduce 5 families x depth 20";
  return o;
}

Outcome criterion_inverse_phi() {
  Outcome o;
  constexpr std::uint64_t scan = 100'000;
  // Independent brute force: the classical totient sieve, no factorization.
  std::vector<std::uint64_t> tot(scan + 1);
  for (std::uint64_t i = 0; i <= scan; ++i) tot[i] = i;
  for (std::uint64_t p = 2; p <= scan; ++p) {
    if (tot[p] != p) continue;
    for (std::uint64_t m = p; m <= scan; m += p) tot[m] -= tot[m] / p;
  }
  std::vector<std::vector<std::uint64_t>> brute(2001);
  for (std::uint64_t x = 1; x <= scan; ++x) {
    if (tot[x] <= 2000) brute[tot[x]].push_back(x);
  }
  const auto t0 = Clock::now();
  for (std::uint64_t m = 1; m <= 2000; ++m) {
    const auto inv = inverse_phi(m);
    std::vector<std::uint64_t> within;
    for (auto x : inv.members) {
      if (x <= scan) within.push_back(x);
    }
    if (within != brute[m] || !inv.complete()) {
      o.require(false, "m = " + std::to_string(m) + " differs from the scan");
      break;
    }
    if (m <= 50 && !inv.members.empty()) {
      const auto bound = phi_bound(m).to_integer();
      o.require(bound && inv.members.back() <= *bound, "m = " + std::to_string(m) + " exceeds the bound");
    }
  }
  o.require(inverse_phi(1).members == std::vector<std::uint64_t>{1, 2}, "inverse_phi(1)");
  o.require(inverse_phi(4).members == std::vector<std::uint64_t>{5, 8, 10, 12}, "inverse_phi(4)");
  const double s = seconds_since(t0);
  o.require(s < 60, "runtime " + fmt_seconds(s));
  if (o.pass) o.detail = "m <= 2000 match the scan of 1..10^5, bound holds for m <= 50, " + fmt_seconds(s);
  return o;
}

Outcome criterion_nonfinite() {
  Outcome o;
  const auto primes = nonfinite_fibre_witness(FunctionId::big_omega(), 1, 10'000);
  o.require(primes.size() == 10'000, "witness count");
  for (auto p : primes) {
    const auto fac = sieve_factor(p);
    if (eval_small(FunctionId::small_omega(), fac) != 1 || eval_small(FunctionId::big_omega(), fac) != 1 ||
        eval_small(FunctionId::d(), fac) != 2) {
      o.require(false, std::to_string(p) + " outside the fibres");
      break;
    }
  }
  std::uint64_t fibre = 0;
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
    if (eval_small(FunctionId::big_omega(), sieve_factor(n)) == 1) ++fibre;
  }
  const std::uint64_t pi = PrimeTable::instance().prime_pi(1'000'000);
  o.require(fibre == pi, "#Omega^{-1}(1) in 1..10^6 = " + std::to_string(fibre) + ", pi(10^6) = " +
                             std::to_string(pi) + " (Omega(1) = 1 puts n = 1 in the fibre)");
  if (o.pass) o.detail = "first 10^4 primes in all three fibres; #Omega^{-1}(1) = pi(10^6) = " + std::to_string(pi);
  return o;
}

Outcome criterion_entropy() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::uint64_t> size(1, 100), element(1, 100);
  double worst = 0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::uint64_t> seeds;
    const auto count = size(rng);
    for (std::uint64_t i = 0; i < count; ++i) seeds.push_back(element(rng));
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    const double v = ent_set_estimate(FunctionId::phi(), seeds, 10'000).value();
    worst = std::max(worst, v);
    o.require(v <= 0.02, "phi estimate " + std::to_string(v) + " for a seed set of size " + std::to_string(seeds.size()));
  }
  const double psi = ent_set_estimate(FunctionId::psi(), {6, 18, 54, 162, 486}, 500).value();
  o.require(std::abs(psi - 5.0) <= 0.1, "psi estimate " + std::to_string(psi));
  if (o.pass) o.detail = "max phi estimate " + std::to_string(worst) + " over 10 seed sets; psi estimate " + std::to_string(psi);
  return o;
}

Outcome criterion_topology() {
  Outcome o;
  o.require(contains_one_forward(FunctionId::phi(), 100'000).passed(), "contains_one_forward(phi, 10^5)");
  for (std::uint64_t k = 1; k <= 10'000; ++k) {
    const auto s = min_open_forward(FunctionId::phi(), k);
    if (s.completeness != SetCompleteness::COMPLETE || s.members.back() > k) {
      o.require(false, "V(" + std::to_string(k) + ", tau-bar_phi)");
      break;
    }
  }
  for (const auto& f : {FunctionId::psi(), FunctionId::psi_k(2), FunctionId::jordan(2), FunctionId::jordan(3),
                        FunctionId::sigma(1), FunctionId::sigma(2)}) {
    o.require(separation_check(f, 100'000).passed(), "separation_check(" + f.name() + ")");
  }
  const auto phi_sep = separation_check(FunctionId::phi(), 100'000);
  const bool has_three = std::find(phi_sep.witnesses.begin(), phi_sep.witnesses.end(), "3") != phi_sep.witnesses.end();
  o.require(!phi_sep.passed() && has_three, "separation_check(phi) should FAIL with witness 3");
  const FunctionTable psi(FunctionId::psi(), 10'000);
  for (std::uint64_t k = 1; k <= 10'000; ++k) {
    const auto s = min_open_backward(psi, k);
    if (s.completeness != SetCompleteness::COMPLETE || s.members.back() > k) {
      o.require(false, "V(" + std::to_string(k) + ", tau_psi)");
      break;
    }
  }
  const auto p = partition_map({ResidueClass{2, 1}, ResidueClass{2, 0}}, 1000);
  o.require(p.components.size() == 2 && p.refines_partition,
            "odd/even partition gave " + std::to_string(p.components.size()) + " components");
  if (o.pass) o.detail = "forward/backward containment, 6 separations, phi fails with witness 3, 2 partition components";
  return o;
}

std::string run_capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

Outcome criterion_determinism() {
  Outcome o;
  const std::string cmd = std::string("\"") + ARITHDYN_CLI_PATH + "\" --format json --no-timestamp table orbit-numbers";
  int s1 = 0, s2 = 0;
  const auto a = run_capture(cmd, s1);
  const auto b = run_capture(cmd, s2);
  o.require(!a.empty(), "no output");
  o.require(a == b, "outputs differ");
  if (o.pass) o.detail = std::to_string(a.size()) + " bytes, identical across two runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", criterion_oracle},
      {"psi_k J_k = J_2k", criterion_identity},
      {"monotone sweeps", criterion_monotone},
      {"anti-orbit certifications",
       [] {
         return certify({{Scheme::PHI_ANTI, 20, 30},
                         {Scheme::D_ANTI, 5, 5},
                         {Scheme::OMEGA_ANTI, 5, 5},
                         {Scheme::SMALL_OMEGA_ANTI, 5, 6}});
       }},
      {"orbit certifications", [] { return certify({{Scheme::PSI_ORBIT, 20, 30}, {Scheme::J2_ORBIT, 20, 30}}); }},
      {"generic construction", criterion_generic},
      {"inverse totient", criterion_inverse_phi},
      {"non-finite fibres", criterion_nonfinite},
      {"entropy estimates", criterion_entropy},
      {"topology", criterion_topology},
      {"determinism", criterion_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
