#include "ramsmooth/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "ramsmooth/parallel.hpp"
#include "ramsmooth/ramanujan.hpp"

namespace ramsmooth {

namespace {

std::int64_t as_signed(std::uint64_t a) { return static_cast<std::int64_t>(a); }

Rational integer_rational(std::int64_t c) { return Rational(Integer(static_cast<long>(c))); }

Rational inverse(std::uint64_t n) { return make_rational(Integer(1), to_integer(n)); }

const std::vector<std::uint64_t>* finite_support(const ArithFn& F) {
  const auto& s = F.traits().transform_support;
  return s.kind == SupportKind::Finite ? &s.finite : nullptr;
}

bool transform_vanishes(const ArithFn& F, std::uint64_t n) {
  const auto& s = F.traits().transform_support;
  if (s.kind == SupportKind::SquareFree) return !is_squarefree(n);
  if (s.kind == SupportKind::Smooth) return largest_prime_factor(n) > s.smooth_bound;
  return false;
}

bool smooth_supported(const ArithFn& F) {
  auto k = F.traits().transform_support.kind;
  return k == SupportKind::Finite || k == SupportKind::Smooth;
}

bool values_agree(const SeriesValue& a, const Rational& b) {
  return a.is_exact() && a.exact() == b;
}

}  // namespace

IrregularSeries irregular_series(const ArithFn& F, const SmoothContext& ctx, std::uint64_t d, std::uint64_t x) {
  if (d == 0) throw std::invalid_argument("irregular_series: d must be positive");
  std::uint64_t cutoff = std::max<std::uint64_t>(x, 1);
  IrregularSeries out{d, ctx.P(), {}};
  if (const auto* support = finite_support(F)) {
    TraceBuilder tb(1, cutoff);
    bool complete = true;
    for (std::uint64_t s : *support) {
      if (s % d != 0) continue;
      std::uint64_t r = s / d;
      if (r == 1 || !ctx.is_sifted(r)) continue;
      if (r > cutoff) {
        complete = false;
        continue;
      }
      tb.add(r, F.transform(s) * inverse(r));
    }
    out.series = tb.finish(complete);
    return out;
  }
  TraceBuilder tb(1, cutoff);
  for (std::uint64_t r = 2; r <= cutoff; ++r) {
    if (!ctx.is_sifted(r)) continue;
    std::uint64_t n = d * r;
    if (transform_vanishes(F, n)) continue;
    tb.add(r, F.transform(n) * inverse(r));
  }
  out.series = tb.finish(false);
  return out;
}

FPrimeDecomposition wod_fprime(const ArithFn& F, const SmoothContext& ctx, std::uint64_t d, std::uint64_t x) {
  if (d == 0) throw std::invalid_argument("wod_fprime: d must be positive");
  FPrimeDecomposition out;
  out.d = d;
  out.lhs = F.transform(d);
  SeriesSum regular;
  for (std::uint64_t K : enumerate_smooth_squarefree(ctx)) {
    if (K > x) break;
    SeriesValue w = wintner_coefficient(F, d * K, d * x).value;
    regular.add(mobius(K) > 0 ? w : -w);
  }
  out.regular = regular.value() * Rational(to_integer(d));
  out.irregular = irregular_series(F, ctx, d, x).series.value;
  out.residual = SeriesValue(out.lhs) - out.regular + out.irregular;
  return out;
}

DecompositionRow wod_f(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a, std::uint64_t x) {
  if (a == 0 || !ctx.is_smooth(a)) throw ScopeError("wod_f: a must be P-smooth");
  DecompositionRow row;
  row.a = a;
  row.value = F(a);
  SeriesSum smooth;
  for (std::uint64_t q : rvl_moduli(a, ctx)) {
    std::int64_t c = ramanujan_sum(q, as_signed(a));
    if (c == 0) continue;
    smooth.add(wintner_coefficient(F, q, x).value * integer_rational(c));
  }
  SeriesSum irregular;
  for (std::uint64_t d : divisors(a)) irregular.add(irregular_series(F, ctx, d, x / d).series.value);
  row.smooth_part = smooth.value();
  row.irregular_part = irregular.value();
  row.reconstruction = row.smooth_part - row.irregular_part;
  row.residual = SeriesValue(row.value) - row.reconstruction;
  return row;
}

CharacterizationReport characterization_diagnostic(const ArithFn& F, const std::vector<std::uint64_t>& ds,
                                                   const std::vector<std::uint64_t>& primes, std::uint64_t x) {
  CharacterizationReport report;
  report.cells.resize(ds.size() * primes.size());
  parallel_for(report.cells.size(), [&](std::size_t i) {
    std::uint64_t d = ds[i / primes.size()], P = primes[i % primes.size()];
    report.cells[i] = {d, P, irregular_series(F, SmoothContext(P), d, x).series};
  });
  for (std::size_t i = 0; i < ds.size(); ++i) {
    std::uint64_t d = ds[i];
    const CharacterizationCell* row = &report.cells[i * primes.size()];
    bool settled = true;
    std::optional<std::uint64_t> rise;
    for (std::size_t j = 0; j < primes.size(); ++j) {
      settled = settled && row[j].value.settled();
      if (j > 0 && row[j].value.value.magnitude() > row[j - 1].value.value.magnitude() && !rise)
        rise = row[j].P;
    }
    Verdict v;
    if (!settled)
      v = Verdict::undetermined("partial sums over r do not settle at the cutoff");
    else if (rise)
      v = Verdict::fails_at(*rise, "|Irr| increases at this P");
    else
      v = Verdict::holds("|Irr| nonincreasing across the prime sequence");
    report.decay.emplace_back(d, std::move(v));
  }
  return report;
}

std::vector<DreamPoint> dream_expansion(const ArithFn& F, std::uint64_t a, const std::vector<std::uint64_t>& primes,
                                        std::uint64_t x) {
  if (a == 0) throw std::invalid_argument("dream_expansion: a must be positive");
  std::map<std::uint64_t, SeriesValue> win;
  Rational target = F(a);
  std::vector<DreamPoint> out;
  for (std::uint64_t P : primes) {
    SmoothContext ctx(P);
    SeriesSum sum;
    for (std::uint64_t q : rvl_moduli(a, ctx)) {
      std::int64_t c = ramanujan_sum(q, as_signed(a));
      if (c == 0) continue;
      auto it = win.find(q);
      if (it == win.end()) it = win.emplace(q, wintner_coefficient(F, q, x).value).first;
      sum.add(it->second * integer_rational(c));
    }
    SeriesValue value = sum.value();
    out.push_back({P, value, value - SeriesValue(target)});
  }
  return out;
}

NullExpansion null_function_smooth_expansion(std::uint64_t a, const SmoothContext& ctx) {
  auto sums = smooth_series_sums(constant_coefficient(Rational(1)), ctx, a);
  return {sums.signed_sum.exact().get_num(), sums.absolute_sum.exact().get_num()};
}

WintnerPrimeRange wintner_prime_and_range(const ArithFn& F, const WintnerProbe& probe) {
  WintnerPrimeRange out;
  auto prime_of = [](const std::vector<std::uint64_t>& support) {
    std::uint64_t P = 2;
    for (std::uint64_t q : support) P = std::max(P, largest_prime_factor(q));
    return P;
  };
  if (const auto* support = finite_support(F)) {
    std::set<std::uint64_t> candidates;
    for (std::uint64_t s : *support)
      for (std::uint64_t q : divisors(s)) candidates.insert(q);
    for (std::uint64_t q : candidates)
      if (!wintner_coefficient(F, q, 1).value.is_zero()) out.support.push_back(q);
    out.prime = prime_of(out.support);
    out.range = out.support.empty() ? 0 : out.support.back();
    out.determined = true;
    out.note = "exact: finite transform support";
    return out;
  }
  const auto& s = F.traits().transform_support;
  std::vector<std::uint64_t> seen;
  std::uint64_t q_max = probe.q_max;
  std::uint64_t bound = s.kind == SupportKind::Smooth ? s.smooth_bound : probe.P_max;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    if (largest_prime_factor(q) > bound) continue;
    if (!wintner_coefficient(F, q, probe.x).value.is_zero()) seen.push_back(q);
  }
  out.prime = prime_of(seen);
  if (s.kind == SupportKind::Smooth) {
    if (*out.prime == s.smooth_bound) {
      out.determined = true;
    } else {
      out.prime = s.smooth_bound;
      out.note = "upper bound from the declared smooth support; probe found no larger witness";
      return out;
    }
    out.note = "declared smooth support attained by a nonzero truncated coefficient; range undetermined";
    return out;
  }
  out.prime.reset();
  out.note = "undetermined beyond probe: transform support not declared finite or smooth";
  return out;
}

Parts parts(const ArithFn& F, std::uint64_t a, std::uint64_t x) {
  if (a == 0) throw std::invalid_argument("parts: a must be positive");
  if (!smooth_supported(F))
    throw ScopeError("parts: " + F.name() + " is not declared with finite or smooth transform support");
  WintnerPrimeRange w = wintner_prime_and_range(F);
  Parts out;
  out.a = a;
  out.value = F(a);
  out.wintner_prime = *w.prime;
  SmoothContext ctx(out.wintner_prime);
  SeriesSum smooth;
  for (std::uint64_t q : rvl_moduli(a, ctx)) {
    std::int64_t c = ramanujan_sum(q, as_signed(a));
    if (c != 0) smooth.add(wintner_coefficient(F, q, x).value * integer_rational(c));
  }
  out.smooth = smooth.value();
  SeriesSum irregular;
  for (std::uint64_t d : divisors(a)) irregular.add(irregular_series(F, ctx, d, x).series.value);
  out.irregular = irregular.value();
  out.smooth_residual = SeriesValue(out.value) - (out.smooth - out.irregular);
  if (w.determined && w.range && finite_support(F)) {
    SeriesSum analytic;
    for (std::uint64_t q : w.support) {
      std::int64_t c = ramanujan_sum(q, as_signed(a));
      if (c != 0) analytic.add(wintner_coefficient(F, q, x).value * integer_rational(c));
    }
    out.analytic = analytic.value();
    out.analytic_residual = SeriesValue(out.value) - (*out.analytic - out.irregular);
  }
  return out;
}

ReefVerdicts reef_predicates(const ArithFn& F, std::uint64_t a_lo, std::uint64_t a_hi, std::uint64_t x) {
  if (!smooth_supported(F)) {
    std::string note = F.name() + " not in the smooth-supported class: transform support not declared finite or smooth";
    return {Verdict::undetermined(note), Verdict::undetermined(note)};
  }
  bool finite = finite_support(F) != nullptr;
  std::optional<Verdict> reef, weak;
  if (!finite) reef = Verdict::undetermined("analytic part undefined without finite Wintner support");
  bool inexact = false;
  for (std::uint64_t a = std::max<std::uint64_t>(a_lo, 1); a <= a_hi; ++a) {
    Parts p = parts(F, a, x);
    if (!reef && p.analytic) {
      if (!p.analytic->is_exact())
        inexact = true;
      else if (!values_agree(*p.analytic, p.value))
        reef = Verdict::fails_at(a, "F(a) differs from the analytic part");
    }
    if (!weak) {
      if (!p.smooth.is_exact())
        inexact = true;
      else if (!values_agree(p.smooth, p.value))
        weak = Verdict::fails_at(a, "F(a) differs from the smooth part");
    }
  }
  std::string range = "on " + std::to_string(a_lo) + ".." + std::to_string(a_hi);
  auto settle = [&](const std::optional<Verdict>& v) {
    if (v) return *v;
    if (inexact) return Verdict::undetermined("truncation-limited " + range);
    return Verdict::holds("holds " + range);
  };
  return {settle(reef), settle(weak)};
}

WadResult wintner_average_decomposition(const Oracle& seq, const SmoothContext& ctx, std::uint64_t d,
                                        std::uint64_t x) {
  if (d == 0) throw std::invalid_argument("wintner_average_decomposition: d must be positive");
  WadResult out;
  out.d = d;
  out.a_d = seq(d);
  SeriesSum regular;
  for (std::uint64_t K : enumerate_smooth_squarefree(ctx)) {
    if (K > x) break;
    std::uint64_t q = d * K;
    SeriesSum A;
    for (std::uint64_t n = q; n <= d * x; n += q) A.add(seq(n) * inverse(n));
    SeriesValue v = A.value();
    regular.add(mobius(K) > 0 ? v : -v);
  }
  out.regular = regular.value() * Rational(to_integer(d));
  SeriesSum irr;
  for (std::uint64_t r = 2; r <= x; ++r)
    if (ctx.is_sifted(r)) irr.add(seq(d * r) * inverse(r));
  out.irregularity = irr.value();
  out.residual = SeriesValue(out.a_d) - out.regular + out.irregularity;
  return out;
}

DecompositionReport decomposition_report(const ArithFn& F, const SmoothContext& ctx,
                                         const std::vector<std::uint64_t>& arguments, std::uint64_t x) {
  DecompositionReport report{F.name(), ctx.P(), x, {}, {}, {}};
  report.rows.resize(arguments.size());
  parallel_for(arguments.size(), [&](std::size_t i) {
    std::uint64_t a = arguments[i];
    try {
      report.rows[i] = wod_f(F, ctx, a, x);
    } catch (const ScopeError& e) {
      DecompositionRow row;
      row.a = a;
      row.in_scope = false;
      row.note = "a not P-smooth: outside the decomposition's scope";
      report.rows[i] = std::move(row);
    }
  });
  if (!arguments.empty()) {
    auto [lo, hi] = std::minmax_element(arguments.begin(), arguments.end());
    report.reef = reef_predicates(F, *lo, *hi, x);
  }
  report.wintner = wintner_prime_and_range(F);
  return report;
}

}  // namespace ramsmooth
