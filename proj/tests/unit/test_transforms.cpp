#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "ramsmooth/funclib.hpp"
#include "ramsmooth/ramanujan.hpp"
#include "ramsmooth/transforms.hpp"

using namespace ramsmooth;

namespace {

ArithFn table_fn(const std::map<std::uint64_t, mpq_class>& t) {
  std::vector<TableEntry> rows;
  for (const auto& [n, v] : t) rows.push_back({n, v});
  return from_table(rows, 0, true);
}

}  // namespace

TEST_CASE("inversion and divisor sums") {
  ArithFn id = builtin("id");
  for (std::uint64_t n = 1; n <= 500; ++n) {
    CHECK(eratosthenes_transform(id, n) == oracle::phi(n));
    CHECK(divisor_sum(id, n) == n);
  }
}

TEST_CASE("ippification") {
  ArithFn id = builtin("id");
  ArithFn K = ippify(id);
  CHECK(K(8) == 2);
  CHECK(K.traits().is_ipp);
  CHECK(ippification_formula(id, 12) == 6);
  for (std::uint64_t a = 1; a <= 1500; ++a) {
    CHECK(ippification_formula(id, a) == oracle::kappa(a));
    CHECK(ippification_formula(builtin("phi"), a) == oracle::phi(oracle::kappa(a)));
  }
  ArithFn omega = builtin("omega");
  CHECK(ippify(omega).name() == omega.name());
}

TEST_CASE("smooth restriction identities") {
  ArithFn omega = builtin("omega"), id = builtin("id");
  CHECK(restrict_smooth(omega, SmoothContext(3), 60) == 2);
  CHECK(restrict_smooth_squarefree(id, SmoothContext(3), 36) == 6);
  for (std::uint64_t P : {2, 3, 5, 7}) {
    SmoothContext ctx(P);
    ArithFn R = restricted_smooth(id, ctx);
    for (std::uint64_t a = 1; a <= 1000; ++a) {
      std::uint64_t s = oracle::smooth_part(a, P), f = oracle::flat_part(a, P);
      CHECK(restrict_smooth(id, ctx, a) == s);
      CHECK(mobius_switch(id, ctx, a) == s);
      CHECK(R(a) == s);
      CHECK(restrict_smooth_squarefree(id, ctx, a) == f);
      SquarefreeRestrictionForms forms = squarefree_restriction_forms(id, ctx, a);
      CHECK(forms.kernel_form == f);
      CHECK(forms.sifted_kernel_form == f);
      CHECK(forms.flat_form == f);
    }
  }
}

TEST_CASE("finite-support Wintner coefficients are complete and exact") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto t = oracle::random_table(seed, oracle::iota(2, 60), 8);
    ArithFn F = table_fn(t);
    for (std::uint64_t q = 1; q <= 60; ++q) {
      mpq_class want = 0;
      for (const auto& [d, v] : t)
        if (d % q == 0) want += v / mpq_class(d);
      Truncated w = wintner_coefficient(F, q, 10);
      CHECK(w.complete);
      CHECK(w.value.exact() == want);
    }
  }
}

TEST_CASE("P-Wintner coefficients match the smooth-restricted sums") {
  ArithFn omega = builtin("omega");
  SmoothContext ctx(5);
  const std::map<std::uint64_t, Rational> want{{1, make_rational(31, 30)}, {2, make_rational(1, 2)},
                                               {3, make_rational(1, 3)}, {5, make_rational(1, 5)}};
  for (std::uint64_t q = 1; q <= 30; ++q) {
    Truncated w = p_wintner_coefficient(omega, ctx, q, 1000);
    auto it = want.find(q);
    CHECK(w.value.exact() == (it == want.end() ? Rational(0) : it->second));
  }
  CHECK(pflat_wintner_coefficient(builtin("id"), SmoothContext(3), 6) == make_rational(1, 3));
}

TEST_CASE("Wintner coefficient of sigma/Id") {
  Truncated w = wintner_coefficient(builtin("sigma_over_id"), 1, 100000);
  CHECK_FALSE(w.complete);
  CHECK(w.value.approx() == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-4));
  CHECK(w.trace.points.back().cutoff == 100000);
}

TEST_CASE("Carmichael coefficients") {
  ArithFn one = builtin("one");
  for (std::uint64_t x = 2; x <= 40; x += 2) CHECK(carmichael_coefficient(one, 2, x).value.exact() == 0);
  for (std::uint64_t q = 1; q <= 12; ++q)
    for (std::uint64_t x : {1, 5, 17, 64}) {
      mpq_class s = 0;
      for (std::uint64_t a = 1; a <= x; ++a) s += oracle::csum_holder(q, a) * mpq_class(oracle::omega(a));
      s /= mpq_class(oracle::phi(q) * x);
      CHECK(carmichael_coefficient(builtin("omega"), q, x).value.exact() == s);
    }
}

TEST_CASE("difference diagnostic stays within its budget") {
  ArithFn F = random_transform_table(4, 300, 20);
  for (std::uint64_t q : {1, 2, 3, 6})
    for (std::uint64_t x : {100, 1000, 5000}) {
      DifferenceDiagnostic d = coefficient_difference_diagnostic(F, q, x);
      CHECK(std::fabs(d.residual.approx()) <= (q + 1) * d.budget.approx() + 1e-12);
    }
}

TEST_CASE("P-Carmichael through the smooth series") {
  SmoothContext ctx(3);
  ArithFn omega = builtin("omega");
  for (std::uint64_t q : {1, 2, 3, 6}) {
    Truncated t = p_carmichael_via_smooth_series(omega, ctx, q, 1u << 14, true);
    Truncated w = p_wintner_coefficient(omega, ctx, q, 1u << 14);
    CHECK(t.value.approx() == doctest::Approx(w.value.approx()).epsilon(1e-3));
  }
  CHECK_THROWS_AS(p_carmichael_via_smooth_series(omega, ctx, 5, 100, false), std::invalid_argument);
  CHECK_THROWS_AS(p_carmichael_via_smooth_series(omega, ctx, 4, 100, true), std::invalid_argument);
}

TEST_CASE("square-free multiplied transform") {
  ArithFn id = builtin("id");
  CHECK(squarefree_multiply_transform(id, 4) == -2);
  for (std::uint64_t d = 1; d <= 500; ++d) {
    mpq_class s = 0;
    for (std::uint64_t e = 1; e <= d; ++e)
      if (d % e == 0 && oracle::squarefree(e)) s += oracle::mu(d / e) * mpq_class(e);
    CHECK(squarefree_multiply_transform(id, d) == s);
  }
}

TEST_CASE("coefficient table and kinds") {
  CHECK(parse_kind("p-wintner") == CoefficientKind::PWintner);
  CHECK_FALSE(parse_kind("bogus").has_value());
  CHECK(kind_needs_prime(CoefficientKind::PFlatWintner));
  CHECK_FALSE(kind_needs_prime(CoefficientKind::Wintner));
  CHECK_THROWS_AS(build_coefficient_table(builtin("one"), CoefficientKind::PWintner, std::nullopt, 1, 4, 10),
                  std::invalid_argument);
  CoefficientTable t = build_coefficient_table(builtin("omega"), CoefficientKind::PWintner, SmoothContext(5), 1, 10, 100);
  REQUIRE(t.entries.size() == 10);
  CHECK(t.find(5)->value.exact() == make_rational(1, 5));
  CHECK(t.find(11) == nullptr);
}

TEST_CASE("wa check traces") {
  WaCheck c = wa_check(builtin("sigma_over_id"), 1024);
  CHECK(c.wa.points.back().value.approx() == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-2));
  CHECK(c.etd.points.back().value.approx() < 0.01);
}
