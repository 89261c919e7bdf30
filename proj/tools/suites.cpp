#include "suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ramsmooth/decomp.hpp"
#include "ramsmooth/expansions.hpp"
#include "ramsmooth/funclib.hpp"
#include "ramsmooth/ramanujan.hpp"
#include "ramsmooth/transforms.hpp"

namespace ramsmooth::cli {

namespace {

using Suite = std::vector<PropertyResult> (*)(const SuiteOptions&);

class Property {
 public:
  explicit Property(std::string name) { result_.property = std::move(name); }

  template <class Detail>
  void check(bool ok, Detail&& detail) {
    ++result_.checked;
    if (ok) return;
    if (result_.failed++ == 0) result_.first_failure = detail();
  }
  PropertyResult done() { return std::move(result_); }

 private:
  PropertyResult result_;
};

std::vector<std::uint64_t> primes_or(const SuiteOptions& o, std::vector<std::uint64_t> fallback) {
  return o.primes ? *o.primes : fallback;
}

std::string at(std::initializer_list<std::pair<const char*, std::int64_t>> fields) {
  std::ostringstream s;
  bool first = true;
  for (const auto& [k, v] : fields) {
    s << (first ? "" : " ") << k << "=" << v;
    first = false;
  }
  return s.str();
}

std::vector<PropertyResult> suite_csum(const SuiteOptions&) {
  Property triple("triple agreement q<=200 |a|<=200"), zero("c_q(0) = phi(q)"), bound("|c_q(a)| <= phi(q)"),
      vanish("nonvanishing criterion q,a<=500"), tele("vertical telescoping a<=1000 p<=31");
  for (std::uint64_t q = 1; q <= 200; ++q) {
    auto phi = static_cast<std::int64_t>(totient(q));
    for (std::int64_t a = -200; a <= 200; ++a) {
      std::int64_t h = csum_holder(q, a);
      triple.check(csum_definition(q, a) == h && csum_kluyver(q, a) == h && ramanujan_sum(q, a) == h,
                   [&] { return at({{"q", q}, {"a", a}}); });
      bound.check(std::abs(h) <= phi, [&] { return at({{"q", q}, {"a", a}}); });
    }
    zero.check(csum_holder(q, 0) == phi, [&] { return at({{"q", q}}); });
  }
  for (std::uint64_t q = 1; q <= 500; ++q)
    for (std::uint64_t a = 1; a <= 500; ++a)
      vanish.check(csum_nonvanishing(q, a) == (csum_holder(q, static_cast<std::int64_t>(a)) != 0),
                   [&] { return at({{"q", q}, {"a", a}}); });
  for (std::uint64_t p : primes_up_to(31))
    for (std::uint64_t a = 1; a <= 1000; ++a) {
      std::int64_t s = 0;
      std::uint64_t pk = 1;
      for (unsigned K = 0; K <= valuation(a, p) + 1; ++K, pk *= p) s += ramanujan_sum(pk, static_cast<std::int64_t>(a));
      tele.check(s == 0, [&] { return at({{"p", p}, {"a", a}}); });
    }
  return {triple.done(), zero.done(), bound.done(), vanish.done(), tele.done()};
}

std::vector<PropertyResult> suite_orthogonality(const SuiteOptions& o) {
  Property div("divisor indicator q<=200 a<=400"), twisted("smooth twisted orthogonality q,l<=100");
  for (std::uint64_t q = 1; q <= 200; ++q)
    for (std::int64_t a = 1; a <= 400; ++a)
      div.check(orthogonality_divisor_indicator(q, a) == Rational(a % static_cast<std::int64_t>(q) == 0 ? 1 : 0),
                [&] { return at({{"q", q}, {"a", a}}); });
  for (std::uint64_t P : primes_or(o, {2, 3, 5, 7})) {
    SmoothContext ctx(P);
    auto moduli = enumerate_smooth(ctx, 100);
    for (std::uint64_t q : moduli)
      for (std::uint64_t l : moduli)
        twisted.check(smooth_twisted_orthogonality(q, l, ctx) == Rational(q == l ? 1 : 0),
                      [&] { return at({{"P", P}, {"q", q}, {"l", l}}); });
  }
  return {div.done(), twisted.done()};
}

std::vector<PropertyResult> suite_local_expansion(const SuiteOptions& o) {
  Property flat("flat expansion equals F on (P)-flat, 100 tables"), second("flat expansion equals F(a_(P)-flat), a<=2000"),
      omega_exp("omega smooth expansion equals omega(a_(P)), a<=5000");
  auto ps = primes_or(o, {2, 3, 5, 7});
  for (std::uint64_t i = 0; i < 100; ++i) {
    ArithFn F = random_transform_table(o.seed * 1000 + i, 210, 24);
    for (std::uint64_t P : ps) {
      SmoothContext ctx(P);
      FlatExpansion expansion(F, ctx);
      for (std::uint64_t a : enumerate_smooth_squarefree(ctx))
        flat.check(expansion(a) == F(a), [&] { return at({{"table", i}, {"P", P}, {"a", a}}); });
      if (i < 10)
        for (std::uint64_t a = 1; a <= 2000; ++a) {
          Rational v = expansion(a);
          second.check(v == F(smooth_squarefree_part(a, ctx)) && v == restrict_smooth_squarefree(F, ctx, a),
                       [&] { return at({{"table", i}, {"P", P}, {"a", a}}); });
        }
    }
  }
  ArithFn om = builtin("omega");
  for (std::uint64_t P : primes_or(o, {2, 3, 5, 7, 11})) {
    SmoothContext ctx(P);
    SmoothExpansion expansion(om, ctx, kDefaultCutoff);
    for (std::uint64_t a = 1; a <= 5000; ++a) {
      SeriesValue v = expansion(a);
      omega_exp.check(v.is_exact() && v.exact() == Rational(omega(smooth_part(a, ctx))),
                      [&] { return at({{"P", P}, {"a", a}}); });
    }
  }
  return {flat.done(), second.done(), omega_exp.done()};
}

std::vector<PropertyResult> suite_wod(const SuiteOptions& o) {
  Property fprime("WOD for F' exact, d<=50"), fvals("WOD for F exact, a in (P) <= 200");
  for (std::uint64_t i = 0; i < 20; ++i) {
    ArithFn F = random_transform_table(o.seed * 1000 + i, 50, 10);
    for (std::uint64_t P : primes_or(o, {2, 3, 5, 7})) {
      SmoothContext ctx(P);
      for (std::uint64_t d = 1; d <= 50; ++d) {
        auto r = wod_fprime(F, ctx, d, 50);
        fprime.check(r.residual.is_exact() && r.residual.is_zero(),
                     [&] { return at({{"table", i}, {"P", P}, {"d", d}}) + " residual=" + r.residual.str(); });
      }
      for (std::uint64_t a : enumerate_smooth(ctx, 200)) {
        auto r = wod_f(F, ctx, a, 200);
        fvals.check(r.residual.is_exact() && r.residual.is_zero(),
                    [&] { return at({{"table", i}, {"P", P}, {"a", a}}) + " residual=" + r.residual.str(); });
      }
    }
  }
  return {fprime.done(), fvals.done()};
}

std::vector<PropertyResult> suite_null_function(const SuiteOptions& o) {
  Property sign("signed smooth sum of c_q(a) vanishes, a<=1000"), absolute("absolute sum equals prod 2p^v_p(a)"),
      classic("classic partial sums oscillate by more than 1, a<=20");
  for (std::uint64_t P : primes_or(o, {2, 3, 5, 7, 11, 13})) {
    SmoothContext ctx(P);
    for (std::uint64_t a = 1; a <= 1000; ++a) {
      NullExpansion n = null_function_smooth_expansion(a, ctx);
      Integer expected = 1;
      for (std::uint64_t p : ctx.primes()) {
        Integer pv;
        mpz_ui_pow_ui(pv.get_mpz_t(), p, valuation(a, p));
        expected *= 2 * pv;
      }
      sign.check(n.signed_sum == 0, [&] { return at({{"P", P}, {"a", a}}); });
      absolute.check(n.absolute_sum == expected, [&] { return at({{"P", P}, {"a", a}}); });
    }
  }
  for (std::uint64_t a = 1; a <= 20; ++a) {
    std::int64_t s = 0, lo = 0, hi = 0;
    for (std::uint64_t q = 1; q <= 10000; ++q) {
      s += ramanujan_sum(q, static_cast<std::int64_t>(a));
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    classic.check(hi - lo > 1, [&] { return at({{"a", a}}); });
  }
  return {sign.done(), absolute.done(), classic.done()};
}

std::vector<PropertyResult> suite_inertia(const SuiteOptions& o) {
  Property inert("Irr_d identical for P >= P0, d<=50"), consistency("F = A_F - I_F in the finite-support regime");
  auto ps = primes_or(o, {2, 3, 5, 7, 11, 13});
  for (std::uint64_t P0 : {2u, 3u, 5u}) {
    auto candidates = enumerate_smooth(SmoothContext(P0), 50);
    for (std::uint64_t i = 0; i < 10; ++i) {
      ArithFn F = random_transform_table(o.seed * 1000 + 100 * P0 + i, candidates, std::min<std::size_t>(8, candidates.size()));
      for (std::uint64_t d = 1; d <= 50; ++d) {
        std::optional<SeriesValue> reference;
        for (std::uint64_t P : ps) {
          if (P < P0) continue;
          SeriesValue v = irregular_series(F, SmoothContext(P), d, 50).series.value;
          if (!reference) reference = v;
          inert.check(v.is_exact() && v == *reference, [&] { return at({{"P0", P0}, {"P", P}, {"d", d}}); });
        }
      }
      for (std::uint64_t a = 1; a <= 60; ++a) {
        Parts p = parts(F, a, 64);
        consistency.check(p.analytic_residual && p.analytic_residual->is_exact() && p.analytic_residual->is_zero(),
                          [&] { return at({{"P0", P0}, {"a", a}}); });
      }
    }
  }
  return {inert.done(), consistency.done()};
}

std::vector<PropertyResult> suite_lemmas(const SuiteOptions& o) {
  Property round("inversion round trip n<=2000"), ipp("IPPification formula a<=2000"),
      sw("Moebius switch a<=2000"), forms("square-free restriction forms a<=2000"),
      sq("square-free multiply transform d<=2000"), cube("square-free multiply vanishes off cube-free d"),
      support("P-Wintner support of IPP built-ins in (P)-flat");
  std::vector<ArithFn> fns;
  for (const auto& name : builtin_names()) fns.push_back(builtin(name));
  for (std::uint64_t i = 0; i < 3; ++i) fns.push_back(random_value_table(o.seed * 1000 + i, 2000));
  for (const ArithFn& F : fns)
    for (std::uint64_t n = 1; n <= 2000; ++n)
      round.check(divisor_sum(F, n) == F(n) && mobius_inversion(F, n) == F.transform(n),
                  [&] { return F.name() + " " + at({{"n", n}}); });

  auto ps = primes_or(o, {2, 3, 5, 7});
  for (std::uint64_t i = 0; i < 3; ++i) {
    ArithFn F = random_value_table(o.seed * 1000 + 500 + i, 2000);
    ArithFn mu2F = ArithFn::from_values(
        "mu2*table", [F](std::uint64_t n) { return is_squarefree(n) ? F(n) : Rational(0); }, {}, std::nullopt, 2000);
    for (std::uint64_t a = 1; a <= 2000; ++a) {
      ipp.check(ippification_formula(F, a) == F(kernel(a)), [&] { return at({{"table", i}, {"a", a}}); });
      Rational m = squarefree_multiply_transform(F, a);
      sq.check(m == mobius_inversion(mu2F, a), [&] { return at({{"table", i}, {"d", a}}); });
      if (!is_cubefree(a)) cube.check(m == 0, [&] { return at({{"table", i}, {"d", a}}); });
      for (std::uint64_t P : ps) {
        SmoothContext ctx(P);
        Rational target = F(smooth_part(a, ctx));
        sw.check(mobius_switch(F, ctx, a) == target && restrict_smooth(F, ctx, a) == target,
                 [&] { return at({{"table", i}, {"P", P}, {"a", a}}); });
        auto f = squarefree_restriction_forms(F, ctx, a);
        Rational flat = F(smooth_squarefree_part(a, ctx));
        forms.check(f.kernel_form == flat && f.sifted_kernel_form == flat && f.flat_form == flat,
                    [&] { return at({{"table", i}, {"P", P}, {"a", a}}); });
      }
    }
  }
  for (const auto& name : builtin_names()) {
    ArithFn F = builtin(name);
    if (!F.traits().is_ipp) continue;
    for (std::uint64_t P : ps) {
      SmoothContext ctx(P);
      for (std::uint64_t q = 1; q <= 200; ++q) {
        if (ctx.is_smooth_squarefree(q)) continue;
        Truncated w = p_wintner_coefficient(F, ctx, q, kDefaultCutoff);
        support.check(w.value.is_exact() && w.value.is_zero(), [&] { return name + " " + at({{"P", P}, {"q", q}}); });
      }
    }
  }
  return {round.done(), ipp.done(), sw.done(), forms.done(), sq.done(), cube.done(), support.done()};
}

std::vector<PropertyResult> suite_appendix(const SuiteOptions& o) {
  Property exact("WAD exact for finitely supported sequences"), harmonic("WAD residual for a_n = 1/n at x = 10^5");
  for (std::uint64_t i = 0; i < 10; ++i) {
    ArithFn table = random_value_table(o.seed * 1000 + 900 + i, 50);
    Oracle seq = [table](std::uint64_t n) { return n <= 50 ? table(n) : Rational(0); };
    for (std::uint64_t P : primes_or(o, {2, 3, 5, 7})) {
      SmoothContext ctx(P);
      for (std::uint64_t d = 1; d <= 50; ++d) {
        WadResult r = wintner_average_decomposition(seq, ctx, d, 50);
        exact.check(r.residual.is_exact() && r.residual.is_zero(), [&] { return at({{"P", P}, {"d", d}}); });
      }
    }
  }
  Oracle inv = [](std::uint64_t n) { return make_rational(Integer(1), to_integer(n)); };
  for (std::uint64_t P : primes_or(o, {2, 3})) {
    SmoothContext ctx(P);
    for (std::uint64_t d = 1; d <= 3; ++d) {
      WadResult r = wintner_average_decomposition(inv, ctx, d, 100000);
      harmonic.check(r.residual.magnitude() <= 1e-3, [&] { return at({{"P", P}, {"d", d}}) + " residual=" + r.residual.str(); });
    }
  }
  return {exact.done(), harmonic.done()};
}

const std::map<std::string, Suite>& registry() {
  static const std::map<std::string, Suite> suites = {
      {"csum", suite_csum},       {"orthogonality", suite_orthogonality}, {"local-expansion", suite_local_expansion},
      {"wod", suite_wod},         {"null-function", suite_null_function}, {"inertia", suite_inertia},
      {"lemmas", suite_lemmas},   {"appendix", suite_appendix}};
  return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"csum", "orthogonality", "local-expansion", "wod", "null-function", "inertia", "lemmas", "appendix"};
}

bool is_suite(const std::string& name) { return registry().count(name) != 0; }

std::vector<PropertyResult> run_suite(const std::string& name, const SuiteOptions& options) {
  auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown suite: " + name);
  return it->second(options);
}

}  // namespace ramsmooth::cli
