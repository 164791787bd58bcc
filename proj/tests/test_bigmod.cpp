#include <doctest.h>

#include <map>
#include <set>

#include "padicfeas/bigmod.hpp"
#include "padicfeas/errors.hpp"
#include "support.hpp"

using namespace padicfeas;
using namespace testing_support;

TEST_CASE("int parsing and conversions") {
  CHECK(parse_int("-120") == -120);
  CHECK(parse_int("+7") == 7);
  CHECK(parse_int("123456789012345678901234567890") == Int("123456789012345678901234567890"));
  CHECK_THROWS_AS(parse_int(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_int("12a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int("-"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int(" 1"), std::invalid_argument);
  CHECK(to_string(parse_int("-0")) == "0");
  CHECK(to_u64(from_u64(~std::uint64_t{0})) == ~std::uint64_t{0});
  CHECK(to_i64(from_i64(INT64_MIN)) == INT64_MIN);
  CHECK_THROWS_AS(to_u64(Int(-1)), std::range_error);
  CHECK(mod_floor(Int(-7), Int(5)) == 3);
}

TEST_CASE("uniform_int stays in range and hits every value") {
  Rng rng(5);
  std::set<long> seen;
  for (int i = 0; i < 2000; ++i) {
    const Int v = uniform_int(rng, Int(-3), Int(4));
    REQUIRE(v >= -3);
    REQUIRE(v <= 4);
    seen.insert(v.get_si());
  }
  CHECK(seen.size() == 8);
  const Int big = Int(1) << 200;
  for (int i = 0; i < 100; ++i) {
    const Int v = uniform_int(rng, Int(1), big);
    REQUIRE(v >= 1);
    REQUIRE(v <= big);
  }
}

TEST_CASE("ord_p examples") {
  CHECK(ord_p(Int(8), Int(2)) == 3u);
  CHECK(ord_p(Int(10), Int(3)) == 0u);
  CHECK_FALSE(ord_p(Int(0), Int(5)).has_value());
  CHECK(ord_p(Int(-250), Int(5)) == 3u);
  CHECK_THROWS_AS(ord_p(Int(8), Int(4)), std::invalid_argument);
}

TEST_CASE("Modulus validates its prime") {
  const Modulus m(Int(7), 2);
  CHECK(m.value() == 49);
  CHECK_THROWS(Modulus(Int(6), 1));
  CHECK_THROWS(Modulus(Int(7), 0));
}

TEST_CASE("mod_pow examples") {
  CHECK(mod_pow(Int(3), Int(1) << 20, Int(7)) == 4);
  CHECK(mod_pow(Int(5), Int(0), Int(13)) == 1);
  CHECK(mod_pow(Int(2), Int(10), Int(1024)) == 0);
  CHECK(mod_pow(Int(-2), Int(3), Int(7)) == 6);
  CHECK_THROWS(mod_pow(Int(2), Int(3), Int(1)));
  CHECK_THROWS(mod_pow(Int(2), Int(-1), Int(7)));
}

TEST_CASE("mod_pow agrees with word-sized square-and-multiply") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t b = rng() % 1'000'000, e = rng() % 1'000'000'000, m = 2 + rng() % 1'000'000'000;
    REQUIRE(mod_pow(from_u64(b), from_u64(e), from_u64(m)) == from_u64(powmod_naive(b, e, m)));
  }
}

TEST_CASE("multiplicative_order examples") {
  CHECK(multiplicative_order(Int(2), Int(7)) == 3);
  CHECK(multiplicative_order(Int(5), Int(8)) == 2);
  CHECK(multiplicative_order(Int(1), Int(97)) == 1);
  CHECK_THROWS_AS(multiplicative_order(Int(2), Int(8)), std::invalid_argument);
}

TEST_CASE("multiplicative_order is exact for every unit mod m <= 1000") {
  for (std::uint64_t m = 2; m <= 1000; ++m) {
    for (std::uint64_t a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      REQUIRE(multiplicative_order(from_u64(a), from_u64(m)) == from_u64(order_naive(a, m)));
    }
  }
}

TEST_CASE("is_prime examples and agreement with trial division") {
  CHECK(is_prime(Int(31)));
  CHECK_FALSE(is_prime(Int(30031)));
  CHECK_FALSE(is_prime(Int(1)));
  CHECK_FALSE(is_prime(Int(0)));
  CHECK_FALSE(is_prime(Int(-7)));
  for (std::uint64_t n = 0; n < 20000; ++n) REQUIRE(is_prime(from_u64(n)) == is_prime_naive(n));
  // Strong pseudoprimes to several small bases.
  CHECK_FALSE(is_prime(Int("3215031751")));
  CHECK_FALSE(is_prime(Int("3825123056546413051")));
  CHECK_FALSE(is_prime(Int("318665857834031151167461")));
  CHECK(is_prime(Int("2305843009213693951")));
  CHECK(is_prime((Int(1) << 127) - 1));
  CHECK_FALSE(is_prime((Int(1) << 128) + 1));
}

TEST_CASE("factor examples") {
  const auto f30 = factor(Int(30));
  REQUIRE(f30.size() == 3);
  CHECK(f30[0] == PrimePower{Int(2), 1});
  CHECK(f30[1] == PrimePower{Int(3), 1});
  CHECK(f30[2] == PrimePower{Int(5), 1});
  CHECK(factor(Int(30031)) == Factorization{{Int(59), 1}, {Int(509), 1}});
  CHECK(factor(Int(1024)) == Factorization{{Int(2), 10}});
  CHECK_THROWS(factor(Int(1)));
}

TEST_CASE("factor recomposes, including products of large primes") {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const Int n = uniform_int(rng, Int(2), Int(1) << 62);
    const auto f = factor(n);
    REQUIRE(recompose(f) == n);
    for (const auto& pp : f) REQUIRE(is_prime(pp.prime));
  }
  const Int semi = Int("1000000007") * Int("998244353") * Int("1000000009");
  CHECK(recompose(factor(semi)) == semi);
  FactorBudget tight;
  tight.trial_limit = 100;
  tight.rho_iterations = 10;
  CHECK_THROWS_AS(factor(Int("1000000007") * Int("998244353"), tight), CapExceeded);
}

TEST_CASE("euler_phi") {
  CHECK(euler_phi(factor(Int(30))) == 8);
  CHECK(euler_phi(factor(Int(210))) == 48);
  CHECK(euler_phi(factor(Int(1024))) == 512);
}

TEST_CASE("primorial and first primes") {
  CHECK(primorial(3) == 30);
  CHECK(primorial(5) == 2310);
  CHECK(primorial(0) == 1);
  CHECK(first_primes(6) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13});
}

TEST_CASE("find_qnr examples") {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const Int a7 = find_qnr(Int(7), rng);
    CHECK((a7 == 3 || a7 == 5 || a7 == 6));
    CHECK(find_qnr(Int(3), rng) == 2);
    const Int a5 = find_qnr(Int(5), rng);
    CHECK((a5 == 2 || a5 == 3));
  }
  CHECK_THROWS(find_qnr(Int(2), rng));
  CHECK_THROWS(find_qnr(Int(9), rng));
}

TEST_CASE("find_qnr satisfies Euler's criterion; exactly (p-1)/2 non-residues for p <= 200") {
  Rng rng(2);
  for (std::uint64_t p = 3; p <= 200; ++p) {
    if (!is_prime_naive(p)) continue;
    const std::uint64_t a = to_u64(find_qnr(from_u64(p), rng));
    CHECK(powmod_naive(a, (p - 1) / 2, p) == p - 1);
    std::set<std::uint64_t> squares;
    for (std::uint64_t x = 1; x < p; ++x) squares.insert(x * x % p);
    CHECK(squares.count(a) == 0);
    std::uint64_t euler = 0;
    for (std::uint64_t x = 1; x < p; ++x) euler += powmod_naive(x, (p - 1) / 2, p) == p - 1;
    CHECK(euler == (p - 1) / 2);
    CHECK(p - 1 - squares.size() == (p - 1) / 2);
  }
}

TEST_CASE("solvable_in_cyclic examples") {
  CHECK(solvable_in_cyclic(Int(3), Int(2), Int(6)));
  CHECK_FALSE(solvable_in_cyclic(Int(6), Int(2), Int(6)));
  for (int d = -5; d <= 12; ++d) {
    for (int g = 1; g <= 20; ++g) CHECK(solvable_in_cyclic(Int(1), Int(d), Int(g)));
  }
}

TEST_CASE("solvable_in_cyclic agrees with brute force over (Z/mZ)^*, m odd prime power <= 500") {
  for (std::uint64_t m = 3; m <= 500; ++m) {
    std::uint64_t q = 0;
    for (std::uint64_t d = 3; d <= m; ++d) {
      if (m % d == 0) {
        q = d;
        break;
      }
    }
    if (q % 2 == 0 || !is_prime_naive(q)) continue;
    std::uint64_t r = m;
    while (r % q == 0) r /= q;
    if (r != 1) continue;
    const std::uint64_t phi = m / q * (q - 1);
    for (std::uint64_t d = 1; d <= 12; ++d) {
      std::set<std::uint64_t> powers;
      for (std::uint64_t x = 1; x < m; ++x) {
        if (std::gcd(x, m) == 1) powers.insert(powmod_naive(x, d, m));
      }
      for (std::uint64_t a = 1; a < m; ++a) {
        if (std::gcd(a, m) != 1) continue;
        const bool brute = powers.count(a) != 0;
        REQUIRE(solvable_in_cyclic(from_u64(order_naive(a, m)), from_u64(d), from_u64(phi)) == brute);
      }
    }
  }
}

TEST_CASE("decompose_2adic_unit examples") {
  CHECK(decompose_2adic_unit(Int(1), 3) == TwoAdicUnit{0, Int(0)});
  CHECK(decompose_2adic_unit(Int(7), 3) == TwoAdicUnit{1, Int(0)});
  CHECK(decompose_2adic_unit(Int(5), 3) == TwoAdicUnit{0, Int(1)});
  CHECK_THROWS(decompose_2adic_unit(Int(4), 3));
  CHECK_THROWS(decompose_2adic_unit(Int(3), 2));
}

TEST_CASE("decompose_2adic_unit is a bijection onto {0,1} x [0, 2^(ell-2)) for ell <= 10") {
  for (unsigned long ell = 3; ell <= 10; ++ell) {
    const std::uint64_t mod = std::uint64_t{1} << ell;
    std::set<std::pair<unsigned, std::uint64_t>> image;
    for (std::uint64_t alpha = 1; alpha < mod; alpha += 2) {
      const TwoAdicUnit u = decompose_2adic_unit(from_u64(alpha), ell);
      const std::uint64_t b = to_u64(u.exponent);
      REQUIRE(u.sign <= 1);
      REQUIRE(b < mod / 4);
      std::uint64_t v = powmod_naive(5, b, mod);
      if (u.sign) v = (mod - v) % mod;
      REQUIRE(v == alpha);
      image.insert({u.sign, b});
    }
    CHECK(image.size() == mod / 2);
  }
}

TEST_CASE("primitive_root generates F_p^*") {
  Rng rng(9);
  for (std::uint64_t p = 3; p < 2000; ++p) {
    if (!is_prime_naive(p)) continue;
    const std::uint64_t g = to_u64(primitive_root(from_u64(p)));
    REQUIRE(order_naive(g, p) == p - 1);
    const std::uint64_t h = to_u64(primitive_root(from_u64(p), &rng));
    REQUIRE(order_naive(h, p) == p - 1);
  }
  CHECK(primitive_root(Int(2)) == 1);
  CHECK(primitive_root(Int(7)) == 3);
}

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(Int(3), Int(7)) == 5);
  CHECK(mod_inverse(Int(-3), Int(7)) == 2);
  CHECK_THROWS_AS(mod_inverse(Int(6), Int(9)), std::domain_error);
}
