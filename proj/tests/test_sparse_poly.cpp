#include <doctest.h>

#include "padicfeas/errors.hpp"
#include "padicfeas/sparse_poly.hpp"
#include "support.hpp"

using namespace padicfeas;
using namespace testing_support;

namespace {

SparsePoly P(std::initializer_list<std::pair<long, long>> terms) {
  std::vector<Term> t;
  for (auto [c, e] : terms) t.push_back({Int(c), Int(e)});
  return SparsePoly::from_terms(std::move(t));
}

const SparsePoly x = P({{1, 1}});

}  // namespace

TEST_CASE("construction canonicalizes") {
  const SparsePoly f = P({{3, 5}, {1, 0}, {-3, 5}, {2, 2}, {4, 2}});
  REQUIRE(f.term_count() == 2);
  CHECK(f.terms()[0] == Term{Int(1), Int(0)});
  CHECK(f.terms()[1] == Term{Int(6), Int(2)});
  CHECK(P({{1, 3}, {-1, 3}}).is_zero());
  CHECK_THROWS(P({{1, -1}}));
  CHECK_THROWS(SparsePoly::from_canonical_terms({{Int(1), Int(2)}, {Int(1), Int(1)}}));
  CHECK_THROWS(SparsePoly::from_canonical_terms({{Int(0), Int(2)}}));
  CHECK_THROWS(SparsePoly::from_canonical_terms({{Int(1), Int(2)}, {Int(3), Int(2)}}));
  CHECK(SparsePoly::x_pow_minus_one(Int(30)) == P({{1, 30}, {-1, 0}}));
  CHECK(f.degree() == 2);
  CHECK(f.leading_coeff() == 6);
  CHECK(f.coeff_of(Int(2)) == 6);
  CHECK(f.coeff_of(Int(7)) == 0);
}

TEST_CASE("arithmetic examples") {
  CHECK(square(x + SparsePoly::constant(1)) == P({{1, 2}, {2, 1}, {1, 0}}));
  CHECK(mul(P({{1, 15}, {-1, 0}}), P({{1, 5}, {1, 0}})) == P({{1, 20}, {1, 15}, {-1, 5}, {-1, 0}}));
  const SparsePoly f = P({{3, 100}, {-2, 7}, {5, 0}});
  CHECK(add(f, negate(f)).is_zero());
  CHECK(shift(f, Int(3)) == P({{3, 103}, {-2, 10}, {5, 3}}));
  CHECK(scale(f, Int(0)).is_zero());
}

TEST_CASE("huge exponents stay exact") {
  const Int e = Int(1) << 200;
  const SparsePoly f = SparsePoly::monomial(Int(1), e) - SparsePoly::constant(1);
  const SparsePoly g = square(f);
  REQUIRE(g.term_count() == 3);
  CHECK(g.degree() == 2 * e);
  CHECK(exact_div(g, f) == f);
  CHECK(derivative(f) == SparsePoly::monomial(e, e - 1));
}

TEST_CASE("ring axioms on random sparse inputs") {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const long max_exp = i % 2 ? 40 : 1'000'000'000;
    const SparsePoly f = random_poly(rng, 6, max_exp, 50);
    const SparsePoly g = random_poly(rng, 6, max_exp, 50);
    const SparsePoly h = random_poly(rng, 6, max_exp, 50);
    REQUIRE(f * g == g * f);
    REQUIRE((f * g) * h == f * (g * h));
    REQUIRE(f * (g + h) == f * g + f * h);
    REQUIRE(f + g == g + f);
    REQUIRE((f - g) + g == f);
    REQUIRE(square(f) == f * f);
    REQUIRE((f * g).term_count() <= std::max<std::size_t>(1, f.term_count() * g.term_count()));
  }
}

TEST_CASE("sparse product matches dense schoolbook multiplication") {
  Rng rng(18);
  for (int i = 0; i < 300; ++i) {
    const SparsePoly f = random_poly(rng, 12, 60, 1000);
    const SparsePoly g = random_poly(rng, 12, 60, 1000);
    REQUIRE(f * g == from_dense(dense_mul(to_dense(f), to_dense(g))));
  }
  // Large coefficients leave the word-sized kernel.
  const SparsePoly big = P({{1, 3}, {1, 0}}) * SparsePoly::constant(Int(1) << 100);
  CHECK(big * big == from_dense(dense_mul(to_dense(big), to_dense(big))));
}

TEST_CASE("eval_mod examples") {
  const Modulus seven(Int(7), 1);
  const SparsePoly f = SparsePoly::monomial(Int(1), Int(1) << 20) + SparsePoly::constant(1);
  CHECK(eval_mod(f, Int(3), seven) == 5);
  const SparsePoly g = P({{4, 9}, {-3, 2}, {11, 0}});
  CHECK(eval_mod(g, Int(0), Int(5)) == 1);
  CHECK(eval_mod(P({{1, 15}, {-1, 0}}), Int(2), Int(31)) == 0);
  CHECK(eval_mod(SparsePoly(), Int(3), Int(7)) == 0);
}

TEST_CASE("eval_mod is a ring homomorphism and matches Horner") {
  Rng rng(19);
  for (int i = 0; i < 1000; ++i) {
    const SparsePoly f = random_poly(rng, 6, 60, 100);
    const SparsePoly g = random_poly(rng, 6, 60, 100);
    const Int m = rand_int(rng, 2, 100000);
    const Int a = rand_int(rng, -100000, 100000);
    const Int fm = eval_mod(f, a, m), gm = eval_mod(g, a, m);
    REQUIRE(eval_mod(f * g, a, m) == mod_floor(fm * gm, m));
    REQUIRE(eval_mod(f + g, a, m) == mod_floor(fm + gm, m));
    REQUIRE(fm == dense_eval_mod(to_dense(f), mod_floor(a, m), m));
  }
}

TEST_CASE("derivative examples and Leibniz rule") {
  CHECK(derivative(P({{1, 7}, {-9, 0}})) == P({{7, 6}}));
  CHECK(derivative(SparsePoly::constant(12)).is_zero());
  CHECK(derivative(P({{1, 30}, {-1, 0}})) == P({{30, 29}}));
  Rng rng(20);
  for (int i = 0; i < 1000; ++i) {
    const SparsePoly f = random_poly(rng, 6, 1'000'000, 100);
    const SparsePoly g = random_poly(rng, 6, 1'000'000, 100);
    REQUIRE(derivative(f * g) == derivative(f) * g + f * derivative(g));
  }
}

TEST_CASE("exact_div examples") {
  CHECK(exact_div(P({{1, 30}, {-1, 0}}), P({{1, 15}, {-1, 0}})) == P({{1, 15}, {1, 0}}));
  CHECK(exact_div(P({{1, 10}, {-1, 0}}), P({{1, 5}, {-1, 0}})) == P({{1, 5}, {1, 0}}));
  CHECK_THROWS_AS(exact_div(P({{1, 2}, {1, 0}}), P({{1, 1}, {1, 0}})), InexactDivision);
  CHECK_THROWS(exact_div(x, SparsePoly()));
  CHECK_THROWS_AS(exact_div(P({{2, 1}}), P({{3, 0}})), InexactDivision);
}

TEST_CASE("exact_div inverts multiplication") {
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const SparsePoly f = random_poly(rng, 5, i % 2 ? 50 : 1'000'000'000, 30);
    SparsePoly g = random_poly(rng, 5, i % 2 ? 50 : 1'000'000'000, 30);
    if (g.is_zero()) g = SparsePoly::constant(1);
    REQUIRE(exact_div(f * g, g) == f);
  }
}

TEST_CASE("exact_div reports dense blowup") {
  DivisionCaps caps;
  caps.max_terms = 100;
  const SparsePoly f = P({{1, 1000}, {-1, 0}});
  CHECK_THROWS_AS(exact_div(f, P({{1, 1}, {-1, 0}}), caps), CapExceeded);
  CHECK(exact_div(f, P({{1, 1}, {-1, 0}})).term_count() == 1000);
}

TEST_CASE("size examples") {
  CHECK(size(P({{1, 5}, {-1, 0}})) == 10);
  CHECK(size(SparsePoly()) == 0);
  CHECK(size_p(P({{1, 5}, {-1, 0}}), Int(2)) == 12);
  // ceil(log2(2 + 2^100)) = 101
  CHECK(size(SparsePoly::monomial(Int(1), Int(1) << 100)) == 1 + 2 + 101);
}

TEST_CASE("size matches the formula computed in floating point for small values") {
  Rng rng(22);
  for (int i = 0; i < 500; ++i) {
    const SparsePoly f = random_poly(rng, 6, 100000, 100000);
    std::uint64_t expect = 0;
    for (const auto& t : f.terms()) {
      auto clog = [](double v) {
        std::uint64_t k = 0;
        while (std::ldexp(1.0, static_cast<int>(k)) < v) ++k;
        return k;
      };
      expect += 1 + clog(2.0 + std::fabs(t.coeff.get_d())) + clog(2.0 + t.exp.get_d());
    }
    REQUIRE(size(f) == expect);
  }
}

TEST_CASE("reverse examples") {
  CHECK(reverse(P({{1, 2}, {-2, 0}})) == P({{-2, 2}, {1, 0}}));
  CHECK(reverse(P({{1, 9}, {-7, 0}})) == P({{-7, 9}, {1, 0}}));
  CHECK(reverse(SparsePoly::constant(5)) == SparsePoly::constant(5));
  CHECK_THROWS(reverse(SparsePoly()));
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    SparsePoly f = random_poly(rng, 6, 1000, 50);
    if (f.is_zero()) continue;
    if (f.low_exponent() > 0) f = f + SparsePoly::constant(1);
    REQUIRE(reverse(reverse(f)) == f);
  }
}

TEST_CASE("gcd_dense examples") {
  CHECK(gcd_dense(P({{1, 15}, {-1, 0}}), P({{1, 10}, {-1, 0}})) == P({{1, 5}, {-1, 0}}));
  const SparsePoly f = P({{1, 2}, {-3, 1}, {2, 0}});
  CHECK(gcd_dense(f, SparsePoly()) == f);
  CHECK(gcd_dense(scale(f, Int(-4)), SparsePoly()) == f);
  CHECK(gcd_dense(P({{1, 2}, {-3, 1}, {2, 0}}), P({{1, 2}, {-4, 1}, {3, 0}})) == P({{1, 1}, {-1, 0}}));
  CHECK(gcd_dense(SparsePoly(), SparsePoly()).is_zero());
  CHECK(gcd_dense(P({{2, 1}, {1, 0}}), P({{4, 2}, {-1, 0}})) == P({{2, 1}, {1, 0}}));
  CHECK_THROWS_AS(gcd_dense(P({{1, 200}}), x, 100), CapExceeded);
}

TEST_CASE("gcd(x^a - 1, x^b - 1) = x^gcd(a,b) - 1 for a, b <= 60") {
  for (long a = 1; a <= 60; ++a) {
    for (long b = 1; b <= 60; ++b) {
      REQUIRE(gcd_dense(P({{1, a}, {-1, 0}}), P({{1, b}, {-1, 0}})) == P({{1, std::gcd(a, b)}, {-1, 0}}));
    }
  }
}

TEST_CASE("gcd_dense recovers planted common factors") {
  Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    const SparsePoly c = primitive_part(random_dense_poly(rng, 1 + i % 3, 5));
    const SparsePoly u = random_dense_poly(rng, 1 + i % 4, 9);
    const SparsePoly v = random_dense_poly(rng, 1 + i % 5, 9);
    const SparsePoly g = gcd_dense(c * u, c * v);
    REQUIRE(exact_div(c * u, g) * g == c * u);
    REQUIRE(exact_div(c * v, g) * g == c * v);
    REQUIRE_NOTHROW(exact_div(g, c));
  }
}

TEST_CASE("resultant_dense against the root product formula") {
  // Res(prod (x - a_i), g) = prod g(a_i) for monic f.
  Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    SparsePoly f = SparsePoly::constant(1);
    std::vector<Int> roots;
    for (int j = 0; j < 1 + i % 4; ++j) {
      roots.push_back(rand_int(rng, -6, 6));
      f = f * (x - SparsePoly::constant(roots.back()));
    }
    const SparsePoly g = random_dense_poly(rng, 1 + i % 5, 7);
    Int expect = 1;
    const Dense gd = to_dense(g);
    for (const auto& a : roots) {
      Int v = 0;
      for (auto it = gd.rbegin(); it != gd.rend(); ++it) v = v * a + *it;
      expect *= v;
    }
    REQUIRE(resultant_dense(f, g) == expect);
  }
}

TEST_CASE("squarefree_part") {
  const SparsePoly f = P({{1, 1}, {-1, 0}});
  const SparsePoly g = P({{1, 2}, {-2, 0}});
  CHECK(squarefree_part(square(f) * g * SparsePoly::constant(6)) == f * g);
  CHECK(squarefree_part(square(square(g))) == g);
  CHECK(primitive_part(P({{-6, 2}, {4, 0}})) == P({{3, 2}, {-2, 0}}));
}
