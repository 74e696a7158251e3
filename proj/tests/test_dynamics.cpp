#include <doctest.h>

#include <set>

#include "arithdyn/dynamics.hpp"
#include "arithdyn/entropy.hpp"

using namespace arithdyn;

namespace {

// Union of the first `horizon` backward layers of `seeds`, by scanning 1..scan.
std::set<std::uint64_t> backward_closure(const FunctionId& f, std::set<std::uint64_t> layer, std::uint64_t horizon,
                                         std::uint64_t scan) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t step = 0; step < horizon; ++step) {
    seen.insert(layer.begin(), layer.end());
    std::set<std::uint64_t> next;
    for (std::uint64_t x = 1; x <= scan; ++x) {
      const BigInt v = eval_oracle(f, x);
      if (v <= scan && layer.count(static_cast<std::uint64_t>(v))) next.insert(x);
    }
    layer = std::move(next);
  }
  return seen;
}

std::string terms_text(const std::vector<FactoredNatural>& terms) {
  std::string s;
  for (const auto& t : terms) s += (s.empty() ? "" : ", ") + (t.to_integer() ? t.to_integer()->str() : t.to_string());
  return s;
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("family terms") {
    CHECK(terms_text(family_terms({Scheme::PSI_ORBIT, 1}, 4)) == "6, 12, 24, 48");
    CHECK(terms_text(family_terms({Scheme::PHI_ANTI, 2}, 3)) == "12, 36, 108");
    CHECK(family_terms({Scheme::J2_ORBIT, 1}, 3)[2].to_string() == "2^23 * 3");
    CHECK(family_term({Scheme::J2_ORBIT, 1}, 2).to_integer() == BigInt(6144));
    CHECK_THROWS_AS(family_term({Scheme::OMEGA_ANTI, 1}, 50), std::out_of_range);
  }

  TEST_CASE("single-family checks") {
    CHECK(verify_orbit({Scheme::PSI_ORBIT, 1}, FunctionId::psi(), 4).passed());
    CHECK(verify_orbit({Scheme::J2_ORBIT, 1}, FunctionId::jordan(2), 3).passed());
    CHECK(verify_orbit({Scheme::J2_ORBIT, 1}, FunctionId::jordan(2), 1).passed());
    CHECK(verify_antiorbit({Scheme::PHI_ANTI, 1}, FunctionId::phi(), 10).passed());
    CHECK_THROWS_AS(verify_orbit({Scheme::PSI_ORBIT, 1}, FunctionId::phi(), 3), std::invalid_argument);
  }

  TEST_CASE("disjointness") {
    const auto self = verify_disjoint({{Scheme::PSI_ORBIT, 1}, {Scheme::PSI_ORBIT, 1}}, 5);
    REQUIRE_FALSE(self.passed());
    REQUIRE(self.counterexample.has_value());
    CHECK(self.counterexample->position == 1);
    CHECK(verify_disjoint(first_families(Scheme::PSI_ORBIT, 5), 50).passed());
  }

  TEST_CASE("scheme certification") {
    const auto phi = certify_scheme(Scheme::PHI_ANTI, 20, 30);
    CHECK(phi.passed());
    CHECK(phi.certified_bound == "a(phi) >= 20 at depth 30");
    const auto psi = certify_scheme(Scheme::PSI_ORBIT, 5, 50);
    CHECK(psi.certified_bound == "o(psi) >= 5 at depth 50");
    CHECK(certify_scheme(Scheme::OMEGA_ANTI, 5, 5).passed());
    CHECK(certify_scheme(Scheme::SMALL_OMEGA_ANTI, 5, 6).passed());
  }

  TEST_CASE("generic construction") {
    const auto psi = generic_family_terms(psi_generic_spec(1), 0, 6);
    CHECK(terms_text(psi.terms) == "6, 12, 24, 48, 96, 192");
    const auto j2 = generic_family_terms(j2_generic_spec(1), 0, 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(identical(j2.terms[i], family_term({Scheme::J2_ORBIT, 1}, i + 1)));
    auto bad = psi_generic_spec(1);
    bad.cofactors[0] = FactoredNatural({PrimePower{5, 1}});
    CHECK_THROWS_AS(generic_family_terms(bad, 0, 3), std::invalid_argument);
  }

  TEST_CASE("monotonicity") {
    CHECK(classify_monotonicity(FunctionId::phi(), 100'000).kind == Monotonicity::DECREASING_WEAK);
    CHECK(classify_monotonicity(FunctionId::psi(), 100'000).kind == Monotonicity::INCREASING_STRICT_ABOVE_1);
    CHECK(classify_monotonicity(FunctionId::sigma(1), 100'000).kind == Monotonicity::INCREASING_STRICT_ABOVE_1);
  }

  TEST_CASE("forward entropy partial values") {
    const auto phi = ent_set_estimate(FunctionId::phi(), {6}, 6);
    CHECK(phi.numerator == 3);
    CHECK(phi.value() == doctest::Approx(0.5));
    CHECK(ent_set_estimate(FunctionId::psi(), {6}, 50).value() == doctest::Approx(1.0));
    CHECK(ent_set_estimate(FunctionId::psi(), {6, 18, 54, 162, 486}, 500).value() == doctest::Approx(5.0).epsilon(0.02));
  }

  TEST_CASE("backward entropy partial values") {
    const auto psi = ent_cset_estimate(FunctionId::psi(), {6}, 10);
    CHECK(psi.numerator == backward_closure(FunctionId::psi(), {6}, 10, 6).size());
    const auto phi = ent_cset_estimate(FunctionId::phi(), {6}, 3);
    CHECK(phi.numerator == backward_closure(FunctionId::phi(), {6}, 3, 1000).size());
    CHECK(ent_cset_estimate(FunctionId::phi(), {1}, 1).value() == doctest::Approx(1.0));
    CHECK_THROWS_AS(ent_cset_estimate(FunctionId::big_omega(), {1}, 3), NotFiniteFibre);
  }

  TEST_CASE("surjective core") {
    CHECK(surjective_core_membership(FunctionId::psi(), 1) == CoreMembership::IN_CORE);
    CHECK(surjective_core_membership(FunctionId::psi(), 2) == CoreMembership::NOT_IN_CORE);
    // 1 is a fixed point whose only preimage is itself, so only 1 reaches it.
    const auto tree = backward_closure(FunctionId::psi(), {12}, 13, 12);
    const auto expected = tree.count(1) ? CoreMembership::IN_CORE : CoreMembership::NOT_IN_CORE;
    CHECK(surjective_core_membership(FunctionId::psi(), 12) == expected);
  }

  TEST_CASE("exploratory search") {
    const auto psi = search_families(FunctionId::psi(), SearchBudget{});
    bool found_orbit = false;
    for (const auto& c : psi.candidates) found_orbit |= c.kind == "orbit";
    CHECK(found_orbit);
    for (const auto& c : search_families(FunctionId::phi(), SearchBudget{}).candidates) CHECK(c.kind != "orbit");
  }
}
