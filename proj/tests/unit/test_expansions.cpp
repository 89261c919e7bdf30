#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "../oracles.hpp"
#include "ramsmooth/expansions.hpp"
#include "ramsmooth/funclib.hpp"
#include "ramsmooth/ramanujan.hpp"

using namespace ramsmooth;

TEST_CASE("series evaluation") {
  CoefficientFn one = constant_coefficient(Rational(1));
  for (std::uint64_t a = 1; a <= 30; ++a) {
    std::int64_t want = 0;
    for (std::uint64_t q = 1; q <= 50; ++q) want += oracle::csum_holder(q, a);
    CHECK(evaluate_series(one, ClassicSummation{50}, a).exact() == want);
    std::vector<SeriesValue> partial = classic_partial_sums(one, a, 50);
    REQUIRE(partial.size() == 50);
    CHECK(partial.back().exact() == want);
  }
  CHECK_THROWS_AS(evaluate_series(one, ClassicSummation{5}, 0), std::invalid_argument);
}

TEST_CASE("smooth summation of the constant coefficient") {
  CoefficientFn one = constant_coefficient(Rational(1));
  // every modulus with c_q(a) != 0 lies below 8000 for these a and P
  for (std::uint64_t P : {2, 3, 5}) {
    const auto moduli = oracle::smooth_upto(P, 8000);
    for (std::uint64_t a = 1; a <= 200; ++a) {
      SmoothContext ctx(P);
      std::int64_t brute = 0, absolute = 0;
      for (std::uint64_t q : moduli) {
        std::int64_t c = oracle::csum_holder(q, a);
        brute += c;
        absolute += c < 0 ? -c : c;
      }
      SmoothSeriesSums s = smooth_series_sums(one, ctx, a);
      CHECK(s.signed_sum.exact() == brute);
      CHECK(s.absolute_sum.exact() == absolute);
    }
  }
}

TEST_CASE("map and table coefficients") {
  CoefficientFn g = map_coefficient({{1, Rational(2)}, {3, make_rational(1, 3)}});
  CHECK(g(1).exact() == 2);
  CHECK(g(2).exact() == 0);
  CHECK(g(3).exact() == make_rational(1, 3));
  CoefficientTable t = build_coefficient_table(builtin("omega"), CoefficientKind::PWintner, SmoothContext(3), 1, 6, 100);
  CoefficientFn h = table_coefficient(t);
  CHECK(h(2).exact() == make_rational(1, 2));
  CHECK(h(7).is_zero());
}

TEST_CASE("flat local expansion") {
  ArithFn id = builtin("id");
  CHECK(local_expansion_flat(id, SmoothContext(3), 8) == 2);
  for (std::uint64_t P : {2, 3, 5, 7}) {
    SmoothContext ctx(P);
    FlatExpansion E(id, ctx);
    for (std::uint64_t a = 1; a <= 2000; ++a) CHECK(E(a) == oracle::flat_part(a, P));
  }
}

TEST_CASE("smooth local expansion") {
  CHECK(local_expansion_smooth(builtin("omega"), SmoothContext(3), 60, 1000).exact() == 2);
  CHECK(local_expansion_smooth(builtin("id"), SmoothContext(2), 12, 1000000).exact() == 4);
  SmoothExpansion E(builtin("omega"), SmoothContext(5), 1000);
  for (std::uint64_t a = 1; a <= 3000; ++a) {
    unsigned want = 0;
    for (std::uint64_t p : {2, 3, 5}) want += a % p == 0;
    CHECK(E(a).exact() == want);
  }
}

TEST_CASE("uniqueness check") {
  ArithFn omega = builtin("omega");
  SmoothContext ctx(3);
  std::map<std::uint64_t, Rational> G{{1, make_rational(5, 6)}, {2, make_rational(1, 2)}, {3, make_rational(1, 3)}};
  UniquenessProbe probe;
  probe.q_max = 12;
  probe.x = 1u << 14;
  UniquenessReport ok = uniqueness_check(omega, ctx, G, UniquenessMode::SquareFree, probe);
  CHECK(ok.verdict.kind == VerdictKind::Holds);
  G[2] = make_rational(1, 3);
  UniquenessReport bad = uniqueness_check(omega, ctx, G, UniquenessMode::SquareFree, probe);
  CHECK(bad.verdict.kind == VerdictKind::FailsAt);
  CHECK(bad.differing_modulus == std::optional<std::uint64_t>(2));
  std::map<std::uint64_t, Rational> outside{{5, Rational(1)}};
  CHECK_THROWS_AS(uniqueness_check(omega, ctx, outside, UniquenessMode::Decay, probe), std::invalid_argument);
  std::map<std::uint64_t, Rational> square{{4, Rational(1)}};
  CHECK_THROWS_AS(uniqueness_check(omega, ctx, square, UniquenessMode::SquareFree, probe), std::invalid_argument);
}

TEST_CASE("NSL and IPP identity") {
  ArithFn omega = builtin("omega");
  SmoothContext ctx(5);
  for (std::uint64_t a : {1, 2, 3, 5, 6, 10, 15, 30}) {
    NslIdentity n = nsl_ipp_identity(omega, ctx, a, 1u << 14);
    mpq_class ratio(a, oracle::phi(a));
    ratio.canonicalize();
    CHECK(n.lhs == (ratio - 1) * oracle::omega(a));
    CHECK(std::fabs(n.residual.approx()) < 1e-3);
  }
  CHECK_THROWS_AS(nsl_ipp_identity(omega, ctx, 4, 100), ScopeError);
  CHECK_THROWS_AS(nsl_ipp_identity(omega, ctx, 7, 100), ScopeError);
}

TEST_CASE("Carmichael comparison suite") {
  CarmichaelIppReport r = carmichael_ipp_suite(builtin("omega"), SmoothContext(3), 1, 6, 1u << 14);
  CHECK_FALSE(r.used_ippification);
  // q restricted to the square-free moduli 1, 2, 3, 6
  CHECK(r.rows.size() == 4);
  CarmichaelIppReport m = carmichael_ipp_suite(builtin("mu2"), SmoothContext(3), 1, 6, 1u << 12);
  CHECK(m.used_ippification);
  for (const auto& row : m.rows)
    if (row.q == 6) CHECK(std::fabs(row.residual.approx()) <= 1e-2);
  CHECK_THROWS_AS(carmichael_ipp_suite(builtin("id"), SmoothContext(3), 1, 6, 100), ScopeError);
}
