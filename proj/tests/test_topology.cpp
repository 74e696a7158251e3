#include <doctest.h>

#include <set>

#include "arithdyn/config.hpp"
#include "arithdyn/topology.hpp"

using namespace arithdyn;

namespace {

std::vector<BigInt> big(std::initializer_list<std::uint64_t> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_SUITE("topology") {
  TEST_CASE("forward minimal open sets") {
    CHECK(min_open_forward(FunctionId::phi(), 6).members == big({1, 2, 6}));
    CHECK(min_open_forward(FunctionId::phi(), 1).members == big({1}));
    const auto psi = min_open_forward(FunctionId::psi(), 6, 16);
    CHECK(psi.completeness == SetCompleteness::TRUNCATED);
    CHECK(psi.contains(12));
    CHECK(psi.contains(24));
  }

  TEST_CASE("backward minimal open sets") {
    // Preimage closure of 12 under psi, by brute force over 1..12.
    std::set<std::uint64_t> closure{12};
    for (bool grew = true; grew;) {
      grew = false;
      for (std::uint64_t n = 1; n <= 12; ++n) {
        if (!closure.count(n) && closure.count(static_cast<std::uint64_t>(eval_oracle(FunctionId::psi(), n))))
          grew = closure.insert(n).second;
      }
    }
    std::vector<BigInt> want(closure.begin(), closure.end());
    const auto got = min_open_backward(FunctionId::psi(), 12);
    CHECK(got.members == want);
    CHECK(got.completeness == SetCompleteness::COMPLETE);
    CHECK(min_open_backward(FunctionId::psi(), 1).members == big({1}));
    CHECK_THROWS_AS(min_open_backward(FunctionId::big_omega(), 1), NotFiniteFibre);
  }

  TEST_CASE("function table inverse") {
    const FunctionTable t(FunctionId::phi(), 100);
    const auto pre = t.preimages(4);
    CHECK(std::vector<std::uint64_t>(pre.begin(), pre.end()) == std::vector<std::uint64_t>{5, 8, 10, 12});
  }

  TEST_CASE("connectivity lemmas") {
    CHECK(contains_one_forward(FunctionId::phi(), 10'000).passed());
    CHECK(contains_one_forward(FunctionId::phi_star(), 10'000).passed());
    CHECK(separation_check(FunctionId::psi(), 10'000).passed());
    CHECK(separation_check(FunctionId::jordan(2), 10'000).passed());
    const auto phi = separation_check(FunctionId::phi(), 1000);
    REQUIRE_FALSE(phi.passed());
    CHECK(phi.counterexample->position == 2);
    CHECK(std::find(phi.witnesses.begin(), phi.witnesses.end(), "3") != phi.witnesses.end());
    const auto psi = contains_one_forward(FunctionId::psi(), 100);
    REQUIRE_FALSE(psi.passed());
    CHECK(psi.counterexample->position == 2);
  }

  TEST_CASE("partition example") {
    const auto p = partition_map({ResidueClass{2, 1}, ResidueClass{2, 0}}, 10);
    CHECK(p.successor[1] == 3);
    CHECK(p.successor[8] == 10);
    CHECK(p.components.size() == 2);
    CHECK(p.components[0] == std::vector<std::uint64_t>{1, 3, 5, 7, 9});
    CHECK(p.refines_partition);
    CHECK(partition_map({Complement{}}, 50).components.size() == 1);
    CHECK(partition_map({ResidueClass{3, 0}, Complement{}}, 12).components.size() == 2);
    CHECK(partition_map({ExplicitSet{{1, 4}}, Complement{}}, 20).components.size() == 2);
    CHECK_THROWS_AS(partition_map({ResidueClass{2, 0}, ResidueClass{4, 0}, Complement{}}, 10), std::invalid_argument);
  }

  TEST_CASE("window components") {
    // phi sends everything to 1 eventually: one component.
    CHECK(window_components(FunctionTable(FunctionId::phi(), 200)).size() == 1);
    // psi fixes 1 and 2 -> 3 -> 4 -> 6 ... : 1 is alone.
    const auto psi = window_components(FunctionTable(FunctionId::psi(), 200));
    CHECK(psi.front() == std::vector<std::uint64_t>{1});
  }
}
