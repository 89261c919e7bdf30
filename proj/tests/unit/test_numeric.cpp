#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ramsmooth/numeric.hpp"

using namespace ramsmooth;

TEST_CASE("rational formatting and parsing") {
  CHECK(to_string(make_rational(6, 4)) == "3/2");
  CHECK(to_string(make_rational(-8, 2)) == "-4");
  CHECK(to_string(make_rational(Integer(10), Integer(-4))) == "-5/2");
  CHECK(parse_rational("-7/21") == make_rational(-1, 3));
  CHECK(parse_rational("12") == Rational(12));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(to_decimal(make_rational(1, 3), 4) == "0.3333");
}

TEST_CASE("series value arithmetic stays exact") {
  SeriesValue v = make_rational(1, 2);
  v += SeriesValue(make_rational(1, 3));
  CHECK(v.is_exact());
  CHECK(v.exact() == make_rational(5, 6));
  v *= Rational(6);
  CHECK(v.exact() == Rational(5));
  CHECK((-v).exact() == Rational(-5));
  CHECK(SeriesValue(0).is_zero());
}

TEST_CASE("inexact values propagate") {
  SeriesValue v = SeriesValue::approximate(0.25);
  CHECK_FALSE(v.is_exact());
  CHECK_THROWS_AS(v.exact(), std::logic_error);
  SeriesValue w = v + SeriesValue(make_rational(1, 4));
  CHECK_FALSE(w.is_exact());
  CHECK(w.approx() == doctest::Approx(0.5));
}

TEST_CASE("accumulator falls back to compensated double past the bit budget") {
  SeriesSum exact;
  for (int n = 1; n <= 200; ++n) exact.add(make_rational(1, n));
  CHECK(exact.exact());

  SeriesSum small(64);
  double reference = 0;
  for (int n = 1; n <= 2000; ++n) {
    small.add(make_rational(1, n));
    reference += 1.0 / n;
  }
  CHECK_FALSE(small.exact());
  CHECK(small.terms() == 2000);
  CHECK(small.value().approx() == doctest::Approx(reference).epsilon(1e-14));
}

TEST_CASE("compensation recovers cancelling terms") {
  SeriesSum s(1);
  s.add(SeriesValue::approximate(1e16));
  s.add(SeriesValue::approximate(1.0));
  s.add(SeriesValue::approximate(-1e16));
  CHECK(s.value().approx() == 1.0);
}

TEST_CASE("doubling cutoffs") {
  CHECK(doubling_cutoffs(1, 10) == std::vector<std::uint64_t>{1, 2, 4, 8, 10});
  CHECK(doubling_cutoffs(3, 12) == std::vector<std::uint64_t>{3, 6, 12});
  CHECK(doubling_cutoffs(5, 4).size() <= 1);
}

TEST_CASE("trace builder snapshots partial sums") {
  TraceBuilder b(1, 8);
  for (std::uint64_t n = 1; n <= 8; ++n) b.add(n, make_rational(1, 1));
  Truncated t = b.finish();
  CHECK(t.cutoff == 8);
  CHECK(t.value.exact() == Rational(8));
  REQUIRE(t.trace.points.size() == 4);
  CHECK(t.trace.points[0].value.exact() == Rational(1));
  CHECK(t.trace.points[2].cutoff == 4);
  CHECK(t.trace.points[2].value.exact() == Rational(4));
}

TEST_CASE("settling diagnostic") {
  Trace geometric;
  Rational s = 0;
  for (int k = 0; k < 8; ++k) {
    s += Rational(1, 1 << (2 * k));
    geometric.points.push_back({std::uint64_t(1) << k, SeriesValue(s)});
  }
  CHECK(geometric.settling());
  Trace linear;
  for (int k = 1; k <= 8; ++k) linear.points.push_back({std::uint64_t(k), SeriesValue(k)});
  CHECK_FALSE(linear.settling());
}
