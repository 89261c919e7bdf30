#include <doctest.h>

#include <stdexcept>

#include "../oracles.hpp"
#include "ramsmooth/arith.hpp"

using namespace ramsmooth;

TEST_CASE("factorization of 360") {
  Factorization f = factorize(360);
  CHECK(f.pairs == std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(f.product() == 360);
  CHECK(f.valuation(3) == 2);
  CHECK(f.valuation(7) == 0);
  CHECK(factorize(1).pairs.empty());
}

TEST_CASE("multiplicative functions") {
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
  CHECK(mobius(1) == 1);
  CHECK(totient(12) == 4);
  CHECK(totient(1) == 1);
  CHECK(kernel(8) == 2);
  CHECK(kernel(1) == 1);
  CHECK(largest_prime_factor(1) == 1);
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("against brute-force oracles") {
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    CHECK(mobius(n) == oracle::mu(n));
    CHECK(totient(n) == oracle::phi_count(n));
    CHECK(kernel(n) == oracle::kappa(n));
    CHECK(omega(n) == oracle::omega(n));
    CHECK(is_squarefree(n) == oracle::squarefree(n));
    CHECK(is_cubefree(n) == oracle::cubefree(n));
    CHECK(largest_prime_factor(n) == oracle::largest_prime_factor(n));
    CHECK(is_prime(n) == oracle::prime(n));
  }
}

TEST_CASE("prime bound validation") {
  CHECK_THROWS_AS(PrimeBound(1), std::invalid_argument);
  CHECK_THROWS_AS(PrimeBound(4), std::invalid_argument);
  CHECK(PrimeBound(7).value() == 7);
  SmoothContext ctx(5);
  CHECK(ctx.primes() == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(ctx.primorial() == 30);
  CHECK(ctx.euler_density() == make_rational(4, 15));
}

TEST_CASE("smooth and rough split") {
  SmoothContext ctx(3);
  SmoothRoughSplit s = smooth_rough_split(90, ctx);
  CHECK(s.smooth == 18);
  CHECK(s.rough == 5);
  for (std::uint64_t P : {2, 3, 5, 7, 11})
    for (std::uint64_t a = 1; a <= 2000; ++a) {
      SmoothContext c(P);
      CHECK(smooth_part(a, c) == oracle::smooth_part(a, P));
      CHECK(smooth_squarefree_part(a, c) == oracle::flat_part(a, P));
      CHECK(c.is_smooth(a) == oracle::smooth(a, P));
      CHECK(c.is_sifted(a) == oracle::sifted(a, P));
    }
}

TEST_CASE("enumerations") {
  SmoothContext ctx(3);
  CHECK(enumerate_smooth(ctx, 12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9, 12});
  CHECK(enumerate_smooth_squarefree(ctx) == std::vector<std::uint64_t>{1, 2, 3, 6});
  for (std::uint64_t P : {2, 5, 13}) {
    SmoothContext c(P);
    CHECK(enumerate_smooth(c, 5000) == oracle::smooth_upto(P, 5000));
    std::vector<std::uint64_t> sifted;
    for (std::uint64_t n = 1; n <= 5000; ++n)
      if (oracle::sifted(n, P)) sifted.push_back(n);
    CHECK(enumerate_sifted(c, 5000) == sifted);
  }
}

TEST_CASE("sifted count with main term and error") {
  SmoothContext ctx(3);
  SiftedCount c = count_sifted(ctx, Rational(30));
  CHECK(c.count == 10);
  CHECK(c.main == Rational(10));
  CHECK(c.error == Rational(0));
  for (std::uint64_t x = 1; x <= 500; x += 7) {
    SiftedCount s = count_sifted(SmoothContext(7), Rational(x));
    std::uint64_t brute = 0;
    for (std::uint64_t n = 1; n <= x; ++n) brute += oracle::sifted(n, 7);
    CHECK(s.count == brute);
    CHECK(s.count == s.main + s.error);
  }
}

TEST_CASE("smooth power series") {
  PowerSeriesBound b = smooth_power_series(SmoothContext(3), Rational(2));
  CHECK(b.exact());
  CHECK(b.lower == make_rational(3, 2));
  PowerSeriesBound h = smooth_power_series(SmoothContext(5), make_rational(1, 2));
  CHECK_FALSE(h.exact());
  double v = 1;
  for (double p : {2.0, 3.0, 5.0}) v /= 1 - 1 / std::sqrt(p);
  CHECK(to_double(h.lower) <= v * (1 + 1e-15));
  CHECK(to_double(h.upper) >= v * (1 - 1e-15));
  CHECK(to_double(h.upper - h.lower) < 1e-12);
}
