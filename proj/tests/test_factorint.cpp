#include <doctest.h>

#include <stdexcept>

#include "arithdyn/factored.hpp"
#include "arithdyn/primes.hpp"
#include "oracles.hpp"

using namespace arithdyn;

TEST_SUITE("factorint") {
  TEST_CASE("primality agrees with trial division below 10^4") {
    for (std::uint64_t n = 0; n < 10'000; ++n) CHECK_MESSAGE(is_prime(u128(n)) == test_oracle::is_prime(n), n);
  }

  TEST_CASE("large primality") {
    CHECK(is_prime(u128((std::uint64_t(1) << 61) - 1)));
    CHECK_FALSE(is_prime(u128(561)));
    CHECK_FALSE(is_prime(u128(3215031751ULL)));  // strong pseudoprime to bases 2, 3, 5, 7
    const BigInt m127 = (BigInt(1) << 127) - 1;
    CHECK(is_prime(m127));
    CHECK_FALSE(is_prime(BigInt(((BigInt(1) << 61) - 1) * ((BigInt(1) << 61) - 1))));
    CHECK_THROWS(is_prime(BigInt(m127 * 3)));
  }

  TEST_CASE("prime table counts and indices") {
    auto& t = PrimeTable::instance();
    std::uint64_t count = 0;
    for (std::uint64_t n = 2; n <= 100'000; ++n) count += test_oracle::is_prime(n);
    CHECK(t.prime_pi(100'000) == count);
    CHECK(t.nth_prime(1) == 2);
    CHECK(t.nth_prime(10) == 29);
    CHECK(t.prime_index(97) == 25);
    CHECK_THROWS_AS(t.prime_index(91), std::invalid_argument);
    CHECK(t.smallest_factor(91) == 7);
  }

  TEST_CASE("factor_u128 splits a semiprime beyond the sieve") {
    const u128 p = (u128(1) << 61) - 1, q = (u128(1) << 31) - 1;
    const auto f = factor_u128(p * q);
    REQUIRE(f.size() == 2);
    CHECK(f[0].first == q);
    CHECK(f[1].first == p);
  }

  TEST_CASE("factor_u128 round trips") {
    for (std::uint64_t n : {1ULL, 2ULL, 360ULL, 9999991ULL, 10000019ULL * 3ULL, 600851475143ULL, 18446744073709551557ULL}) {
      u128 back = 1;
      for (auto [p, e] : factor_u128(n)) {
        CHECK(is_prime(p));
        for (unsigned i = 0; i < e; ++i) back *= p;
      }
      CHECK(back == u128(n));
    }
  }

  TEST_CASE("parse_natural rejects junk") {
    CHECK(parse_natural("12345678901234567890123") == BigInt("12345678901234567890123"));
    CHECK_THROWS_AS(parse_natural("-3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_natural("12a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_natural(""), std::invalid_argument);
  }

  TEST_CASE("factored naturals normalize and round trip") {
    const auto x = factorize(BigInt(360));
    CHECK(x.to_string() == "2^3 * 3^2 * 5");
    CHECK(x.to_integer() == BigInt(360));
    CHECK(x.big_omega()->value() == 6);
    CHECK(x.small_omega()->value() == 3);
    CHECK(factorize(BigInt(1)).is_one());
    CHECK(multiply(factorize(BigInt(12)), factorize(BigInt(18))).to_string() == "2^3 * 3^3");
  }

  TEST_CASE("short concrete runs expand") {
    const auto r = FactoredNatural::prime_run(1, 5);
    CHECK_FALSE(r.has_runs());
    CHECK(r.to_integer() == BigInt(2310));
  }

  TEST_CASE("symbolic towers stay exact") {
    // 2^(2^65536): the exponent is far beyond any bit budget.
    const auto inner = FactoredNatural::prime_power(2, SymNat(65536));
    const auto tower = FactoredNatural::prime_power(2, SymNat::of(inner));
    CHECK_FALSE(tower.to_integer().has_value());
    CHECK(equal(tower, tower) == Truth::yes);
    const auto other = FactoredNatural::prime_power(3, SymNat::of(inner));
    CHECK(equal(tower, other) == Truth::no);
    CHECK(tower.big_omega()->identical(SymNat::of(inner)));
  }

  TEST_CASE("long runs stay symbolic and absorb neighbours") {
    const SymNat huge = SymNat::of(FactoredNatural::prime_power(2, SymNat(5000)));
    const auto run = FactoredNatural::prime_run(2, huge);
    REQUIRE(run.has_runs());
    CHECK(run.small_omega().has_value());
    // Multiplying by 2 = q_1 joins the run at its lower end.
    const auto joined = multiply(factorize(BigInt(2)), run);
    REQUIRE(joined.runs().size() == 1);
    CHECK(joined.powers().empty());
    CHECK(joined.runs().front().first.value() == 1);
  }

  TEST_CASE("invalid factorizations are rejected") {
    CHECK_THROWS(FactoredNatural({PrimePower{4, 1}}));
    CHECK_THROWS(FactoredNatural({PrimePower{3, 0}}));
    CHECK_THROWS(FactoredNatural({}, {PrimeRun{5, 3}}));
  }
}
