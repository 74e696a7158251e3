#include <doctest.h>

#include "arithdyn/config.hpp"
#include "arithdyn/preimage.hpp"

using namespace arithdyn;

namespace {

using Members = std::vector<std::uint64_t>;

Members scan(const FunctionId& f, std::uint64_t m, std::uint64_t bound) {
  Members out;
  for (std::uint64_t x = 1; x <= bound; ++x) {
    if (eval_oracle(f, x) == m) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_SUITE("preimage") {
  TEST_CASE("expansive fibres") {
    const auto r = preimage_expansive(FunctionId::psi(), 12);
    CHECK(r.complete());
    CHECK(r.members == scan(FunctionId::psi(), 12, 12));
    CHECK(r.members == Members{6, 8, 9, 11});
    CHECK(preimage_expansive(FunctionId::psi(), 1).members == Members{1});
    CHECK(preimage_expansive(FunctionId::sigma(1), 2).members.empty());
    CHECK_THROWS_AS(preimage_expansive(FunctionId::phi(), 4), std::invalid_argument);
  }

  TEST_CASE("expansive fibres match scans") {
    for (const auto& f : {FunctionId::psi_k(2), FunctionId::jordan(2), FunctionId::sigma(1)}) {
      for (std::uint64_t m = 1; m <= 300; ++m) REQUIRE(preimage_expansive(f, m).members == scan(f, m, m));
    }
  }

  TEST_CASE("phi bound") {
    CHECK(phi_bound(1).to_integer() == BigInt(2));
    CHECK(phi_bound(2).to_integer() == BigInt(36));
  }

  TEST_CASE("inverse totient") {
    CHECK(inverse_phi(1).members == Members{1, 2});
    CHECK(inverse_phi(4).members == Members{5, 8, 10, 12});
    CHECK(inverse_phi(3).members.empty());
    CHECK(inverse_phi(3).complete());
    for (std::uint64_t m = 1; m <= 60; ++m) CHECK(inverse_phi(m).members == scan(FunctionId::phi(), m, 400));
  }

  TEST_CASE("inverse totient respects the budget") {
    CHECK_THROWS_AS(inverse_phi(limits().inverse_phi_max + 2), BudgetExceeded);
  }

  TEST_CASE("bounded search is labelled") {
    const auto r = bounded_preimage(FunctionId::phi_star(), 6, 100);
    CHECK_FALSE(r.complete());
    CHECK(r.members == scan(FunctionId::phi_star(), 6, 100));
  }

  TEST_CASE("infinite fibre witnesses") {
    CHECK(nonfinite_fibre_witness(FunctionId::big_omega(), 1, 4) == Members{2, 3, 5, 7});
    CHECK(nonfinite_fibre_witness(FunctionId::d(), 2, 3) == Members{2, 3, 5});
    CHECK(nonfinite_fibre_witness(FunctionId::small_omega(), 1, 1) == Members{2});
    CHECK_THROWS_AS(nonfinite_fibre_witness(FunctionId::big_omega(), 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(nonfinite_fibre_witness(FunctionId::phi(), 1, 3), std::invalid_argument);
  }
}
