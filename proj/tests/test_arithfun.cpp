#include <doctest.h>

#include "arithdyn/arithfun.hpp"
#include "arithdyn/config.hpp"
#include "oracles.hpp"

using namespace arithdyn;

TEST_SUITE("arithfun") {
  TEST_CASE("every function maps 1 to 1") {
    for (const auto& f : catalogue(3)) {
      CHECK_MESSAGE(eval(f, BigInt(1)) == 1, f.name());
      CHECK_MESSAGE(eval_oracle(f, 1) == 1, f.name());
    }
  }

  TEST_CASE("spot values") {
    CHECK(eval(FunctionId::phi(), BigInt(18)) == 6);
    CHECK(eval(FunctionId::psi(), BigInt(6)) == 12);
    CHECK(eval(FunctionId::jordan(2), BigInt(96)) == 6144);
    CHECK(eval(FunctionId::phi_star(), BigInt(12)) == 6);
    CHECK(eval(FunctionId::big_omega(), BigInt(360)) == 6);
    CHECK(eval(FunctionId::small_omega(), BigInt(360)) == 3);
    CHECK(eval(FunctionId::d(), BigInt(360)) == 24);
    CHECK(eval(FunctionId::divisors(3), BigInt(12)) == 18);
    CHECK(eval(FunctionId::sigma(2), BigInt(6)) == 50);
  }

  TEST_CASE("closed forms match the definitions") {
    for (const auto& f : catalogue(3)) {
      const std::uint64_t top = f.family == Family::Jordan && f.param > 1 ? 120 : 300;
      for (std::uint64_t n = 1; n <= top; ++n) REQUIRE_MESSAGE(eval(f, BigInt(n)) == eval_oracle(f, n), f.name() << "(" << n << ")");
    }
  }

  TEST_CASE("naive totient and psi oracles agree with eval") {
    for (std::uint64_t n = 1; n <= 200; ++n) {
      CHECK(eval(FunctionId::phi(), BigInt(n)) == test_oracle::phi(n));
      CHECK(eval(FunctionId::psi(), BigInt(n)) == test_oracle::psi(n));
    }
  }

  TEST_CASE("sieve path agrees with the factored path") {
    for (const auto& f : catalogue(3)) {
      for (std::uint64_t n = 1; n <= 2000; n += 7) CHECK(eval_small(f, sieve_factor(n)) == eval(f, BigInt(n)));
    }
  }

  TEST_CASE("parsing names") {
    CHECK(parse_function("phi") == FunctionId::phi());
    CHECK(parse_function("J_2") == FunctionId::jordan(2));
    CHECK(parse_function("psi", 3u) == FunctionId::psi_k(3));
    CHECK(parse_function("Omega") == FunctionId::big_omega());
    CHECK(parse_function("omega") == FunctionId::small_omega());
    CHECK(parse_function("phi*") == FunctionId::phi_star());
    CHECK(parse_function("sigma_1") == FunctionId::sigma(1));
    CHECK(FunctionId::divisors(3).name() == "d_3");
    CHECK_THROWS_AS(parse_function("zeta"), std::invalid_argument);
    CHECK_THROWS_AS(validate(FunctionId::divisors(1)), std::invalid_argument);
  }

  TEST_CASE("huge arguments stay factored") {
    // phi(2^1000 * 3^1000) = 2^1000 * 3^999.
    const FactoredNatural x({PrimePower{2, 1000}, PrimePower{3, 1000}});
    const auto v = eval(FunctionId::phi(), x);
    CHECK(v.equals(FactoredNatural({PrimePower{2, 1000}, PrimePower{3, 999}})) == Truth::yes);
    // Omega of a symbolic tower is its exponent.
    const SymNat e = SymNat::of(FactoredNatural::prime_power(2, SymNat(5000)));
    const auto tower = FactoredNatural::prime_power(5, e);
    const auto omega = eval(FunctionId::big_omega(), tower);
    CHECK(omega.is_count());
    CHECK(omega.equals(FactoredNatural::prime_power(2, SymNat(5000))) == Truth::yes);
    CHECK_THROWS_AS(omega.factored(), BudgetExceeded);
  }

  TEST_CASE("prime runs are rejected outside Omega and omega") {
    const SymNat huge = SymNat::of(FactoredNatural::prime_power(2, SymNat(5000)));
    const auto run = FactoredNatural::prime_run(2, huge);
    CHECK_THROWS_AS(eval(FunctionId::phi(), run), std::invalid_argument);
    CHECK_NOTHROW(eval(FunctionId::small_omega(), run));
  }

  TEST_CASE("psi_k J_k = J_2k on a small window") {
    for (unsigned k = 1; k <= 3; ++k) CHECK(psi_jordan_identity_check(k, 2000).passed());
  }
}
