#include "ramsmooth/transforms.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "ramsmooth/parallel.hpp"
#include "ramsmooth/ramanujan.hpp"

namespace ramsmooth {

namespace {

Rational inverse(std::uint64_t n) { return make_rational(Integer(1), to_integer(n)); }

Rational abs_value(const Rational& r) { return sgn(r) < 0 ? Rational(-r) : r; }

std::int64_t as_signed(std::uint64_t a) { return static_cast<std::int64_t>(a); }

// Whether F'(d) is known to vanish from the declared support alone.
bool transform_vanishes(const ArithFn& F, std::uint64_t d) {
  const auto& s = F.traits().transform_support;
  switch (s.kind) {
    case SupportKind::SquareFree:
      return !is_squarefree(d);
    case SupportKind::Smooth:
      return largest_prime_factor(d) > s.smooth_bound;
    case SupportKind::Finite:
      return !std::binary_search(s.finite.begin(), s.finite.end(), d);
    case SupportKind::Unknown:
      break;
  }
  return false;
}

const std::vector<std::uint64_t>* finite_support(const ArithFn& F) {
  const auto& s = F.traits().transform_support;
  return s.kind == SupportKind::Finite ? &s.finite : nullptr;
}

void rescale_average(Truncated& t, std::uint64_t q) {
  Rational phi(to_integer(totient(q)));
  for (auto& pt : t.trace.points) pt.value *= Rational(1) / (phi * Rational(to_integer(pt.cutoff)));
  t.value *= Rational(1) / (phi * Rational(to_integer(t.cutoff)));
}

}  // namespace

Rational eratosthenes_transform(const ArithFn& F, std::uint64_t d) { return F.transform(d); }

Rational mobius_inversion(const ArithFn& F, std::uint64_t d) {
  Rational value(0);
  for (std::uint64_t e : divisors(d)) {
    int mu = mobius(d / e);
    if (mu > 0) value += F(e);
    if (mu < 0) value -= F(e);
  }
  return value;
}

Rational divisor_sum(const ArithFn& F, std::uint64_t n) {
  Rational total(0);
  for (std::uint64_t d : divisors(n)) total += F.transform(d);
  return total;
}

ArithFn ippify(const ArithFn& F) {
  if (F.traits().is_ipp) return F;
  FnTraits t{true, F.traits().is_nsl, TransformSupport::square_free()};
  return ArithFn::from_values(
      "ipp(" + F.name() + ")", [F](std::uint64_t a) { return F(kernel(a)); }, t, std::nullopt,
      F.domain_bound());
}

Rational ippification_formula(const ArithFn& F, std::uint64_t a) {
  Rational total(0);
  for (std::uint64_t t : divisors(a)) {
    if (!is_squarefree(t)) continue;
    if (t % kernel(a / t) != 0) continue;
    total += F(t);
  }
  return total;
}

Rational restrict_smooth(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a) {
  Rational total(0);
  for (std::uint64_t d : divisors(smooth_part(a, ctx))) total += F.transform(d);
  return total;
}

Rational mobius_switch(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a) {
  Rational total(0);
  for (std::uint64_t t : divisors(a))
    if (ctx.is_smooth(t) && ctx.is_sifted(a / t)) total += F(t);
  return total;
}

ArithFn restricted_smooth(const ArithFn& F, const SmoothContext& ctx) {
  FnTraits t{F.traits().is_ipp, F.traits().is_nsl, TransformSupport::smooth(ctx.P())};
  return ArithFn::from_values(
      F.name() + "_(" + std::to_string(ctx.P()) + ")",
      [F, ctx](std::uint64_t a) { return F(smooth_part(a, ctx)); }, t,
      Oracle([F, ctx](std::uint64_t d) { return ctx.is_smooth(d) ? F.transform(d) : Rational(0); }));
}

Rational restrict_smooth_squarefree(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a) {
  Rational total(0);
  for (std::uint64_t d : divisors(smooth_squarefree_part(a, ctx))) total += F.transform(d);
  return total;
}

SquarefreeRestrictionForms squarefree_restriction_forms(const ArithFn& F, const SmoothContext& ctx,
                                                        std::uint64_t a) {
  SquarefreeRestrictionForms out{Rational(0), Rational(0), Rational(0)};
  std::uint64_t s = smooth_part(a, ctx);
  for (std::uint64_t t : divisors(s))
    if (is_squarefree(t) && t % kernel(s / t) == 0) out.kernel_form += F(t);
  std::uint64_t k = kernel(a);
  for (std::uint64_t t : divisors(k)) {
    if (ctx.is_smooth(t) && ctx.is_sifted(k / t)) out.sifted_kernel_form += F(t);
    if (ctx.is_smooth_squarefree(t) && a % t == 0 && ctx.is_sifted(k / t)) out.flat_form += F(t);
  }
  return out;
}

Truncated wintner_coefficient(const ArithFn& F, std::uint64_t q, std::uint64_t x) {
  if (q == 0) throw std::invalid_argument("wintner_coefficient: q must be positive");
  if (const auto* support = finite_support(F)) {
    std::uint64_t top = std::max(x, support->empty() ? x : support->back());
    TraceBuilder tb(1, top);
    for (std::uint64_t s : *support)
      if (s % q == 0) tb.add(s, F.transform(s) * inverse(s));
    return tb.finish(true);
  }
  TraceBuilder tb(q, std::max(x, q));
  for (std::uint64_t d = q; d <= x; d += q) {
    if (transform_vanishes(F, d)) continue;
    tb.add(d, F.transform(d) * inverse(d));
    if (d > x - q) break;
  }
  return tb.finish(false);
}

Truncated p_wintner_coefficient(const ArithFn& F, const SmoothContext& ctx, std::uint64_t q, std::uint64_t x) {
  if (q == 0) throw std::invalid_argument("p_wintner_coefficient: q must be positive");
  if (!ctx.is_smooth(q)) {
    Truncated t = TraceBuilder(1, std::max<std::uint64_t>(x, 1)).finish(true);
    return t;
  }
  if (const auto* support = finite_support(F)) {
    std::uint64_t top = std::max(x, support->empty() ? x : support->back());
    TraceBuilder tb(1, top);
    for (std::uint64_t s : *support)
      if (s % q == 0 && ctx.is_smooth(s)) tb.add(s, F.transform(s) * inverse(s));
    return tb.finish(true);
  }
  const auto& s = F.traits().transform_support;
  if (s.kind == SupportKind::SquareFree) {
    // restricted to (P) the support is inside the finite set (P)-flat
    auto flat = enumerate_smooth_squarefree(ctx);
    std::uint64_t top = std::max(x, flat.back());
    TraceBuilder tb(1, top);
    for (std::uint64_t d : flat)
      if (d % q == 0) tb.add(d, F.transform(d) * inverse(d));
    return tb.finish(true);
  }
  TraceBuilder tb(q, std::max(x, q));
  if (x >= q) {
    for (std::uint64_t m : enumerate_smooth(ctx, x / q)) {
      std::uint64_t d = q * m;
      if (transform_vanishes(F, d)) continue;
      tb.add(d, F.transform(d) * inverse(d));
    }
  }
  return tb.finish(false);
}

Rational pflat_wintner_coefficient(const ArithFn& F, const SmoothContext& ctx, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("pflat_wintner_coefficient: q must be positive");
  Rational total(0);
  if (!ctx.is_smooth_squarefree(q)) return total;
  for (std::uint64_t d : enumerate_smooth_squarefree(ctx))
    if (d % q == 0) total += F.transform(d) * inverse(d);
  return total;
}

Truncated carmichael_coefficient(const ArithFn& F, std::uint64_t q, std::uint64_t x) {
  if (q == 0 || x == 0) throw std::invalid_argument("carmichael_coefficient: q and x must be positive");
  TraceBuilder tb(1, x);
  for (std::uint64_t a = 1; a <= x; ++a) {
    std::int64_t c = ramanujan_sum(q, as_signed(a));
    if (c != 0) tb.add(a, F(a) * Rational(Integer(static_cast<long>(c))));
  }
  Truncated t = tb.finish(false);
  rescale_average(t, q);
  return t;
}

Truncated p_carmichael_coefficient(const ArithFn& F, const SmoothContext& ctx, std::uint64_t q,
                                   std::uint64_t x) {
  if (q == 0 || x == 0) throw std::invalid_argument("p_carmichael_coefficient: q and x must be positive");
  std::unordered_map<std::uint64_t, Rational> cache;
  TraceBuilder tb(1, x);
  for (std::uint64_t a = 1; a <= x; ++a) {
    std::int64_t c = ramanujan_sum(q, as_signed(a));
    if (c == 0) continue;
    std::uint64_t s = smooth_part(a, ctx);
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, F(s)).first;
    tb.add(a, it->second * Rational(Integer(static_cast<long>(c))));
  }
  Truncated t = tb.finish(false);
  rescale_average(t, q);
  return t;
}

Truncated p_carmichael_via_smooth_series(const ArithFn& F, const SmoothContext& ctx, std::uint64_t q,
                                         std::uint64_t x, bool ipp_mode) {
  if (q == 0 || !ctx.is_smooth(q)) throw std::invalid_argument("p_carmichael_via_smooth_series: q must lie in (P)");
  if (ipp_mode && !ctx.is_smooth_squarefree(q))
    throw std::invalid_argument("p_carmichael_via_smooth_series: ipp mode needs square-free q");
  if (x == 0) throw std::invalid_argument("p_carmichael_via_smooth_series: x must be positive");
  TraceBuilder tb(1, x);
  for (std::uint64_t t : enumerate_smooth(ctx, x)) {
    std::int64_t c = ramanujan_sum(q, as_signed(t));
    if (c == 0) continue;
    if (ipp_mode && !is_squarefree(t)) continue;
    Rational term = F(t) * Rational(Integer(static_cast<long>(c))) * inverse(t);
    if (ipp_mode) term *= make_rational(to_integer(t), to_integer(totient(t)));
    tb.add(t, term);
  }
  Truncated out = tb.finish(false);
  Rational norm = ctx.euler_density() / Rational(to_integer(totient(q)));
  for (auto& pt : out.trace.points) pt.value *= norm;
  out.value *= norm;
  return out;
}

DifferenceDiagnostic coefficient_difference_diagnostic(const ArithFn& F, std::uint64_t q, std::uint64_t x,
                                                       const std::optional<SmoothContext>& ctx) {
  DifferenceDiagnostic out;
  out.lhs = ctx ? p_carmichael_coefficient(F, *ctx, q, x).value : carmichael_coefficient(F, q, x).value;
  SeriesSum main, budget;
  auto visit = [&](std::uint64_t d) {
    if (ctx && !ctx->is_smooth(d)) return;
    Rational v = F.transform(d);
    if (sgn(v) == 0) return;
    budget.add(abs_value(v));
    if (d % q == 0) main.add(v * inverse(d));
  };
  if (const auto* support = finite_support(F)) {
    for (std::uint64_t d : *support)
      if (d <= x) visit(d);
  } else {
    for (std::uint64_t d = 1; d <= x; ++d)
      if (!transform_vanishes(F, d)) visit(d);
  }
  out.main = main.value();
  out.residual = out.lhs - out.main;
  out.budget = budget.value() * inverse(x);
  if (out.budget.is_zero())
    out.ratio = out.residual.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
  else
    out.ratio = out.residual.magnitude() / out.budget.magnitude();
  return out;
}

Rational squarefree_multiply_transform(const ArithFn& F, std::uint64_t d) {
  auto f = factorize(d);
  std::uint64_t k = 1;
  bool squarefree = true;
  for (const auto& pp : f.pairs) {
    k *= pp.prime;
    if (pp.exponent > 2) return Rational(0);
    if (pp.exponent == 2) squarefree = false;
  }
  Rational total(0);
  if (squarefree) {
    for (std::uint64_t t : divisors(f)) {
      int mu = mobius(t);
      if (mu > 0) total += F(t);
      if (mu < 0) total -= F(t);
    }
    if (mobius(f) < 0) total = -total;
    return total;
  }
  std::uint64_t s = d / k;  // square-free since d is cube-free
  for (std::uint64_t t : divisors(k)) {
    if (std::gcd(k / t, s) != 1) continue;
    int mu = mobius(k / t);
    if (mu > 0) total += F(t);
    if (mu < 0) total -= F(t);
  }
  if (mobius(s) < 0) total = -total;
  return total;
}

WaCheck wa_check(const ArithFn& F, std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("wa_check: x must be positive");
  TraceBuilder wa(1, x), dh(1, x), etd(1, x);
  auto visit = [&](std::uint64_t d) {
    Rational v = abs_value(F.transform(d));
    if (sgn(v) == 0) return;
    Rational w = v * inverse(d);
    wa.add(d, w);
    dh.add(d, w * Rational(Integer(1) << omega(d)));
    etd.add(d, v);
  };
  if (const auto* support = finite_support(F)) {
    for (std::uint64_t d : *support)
      if (d <= x) visit(d);
  } else {
    for (std::uint64_t d = 1; d <= x; ++d)
      if (!transform_vanishes(F, d)) visit(d);
  }
  WaCheck out{wa.finish().trace, dh.finish().trace, {}};
  Truncated e = etd.finish();
  for (auto& pt : e.trace.points) pt.value *= inverse(pt.cutoff);
  out.etd = std::move(e.trace);
  return out;
}

const char* kind_name(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::Wintner: return "wintner";
    case CoefficientKind::Carmichael: return "carmichael";
    case CoefficientKind::PWintner: return "p-wintner";
    case CoefficientKind::PCarmichael: return "p-carmichael";
    case CoefficientKind::PFlatWintner: return "pflat-wintner";
  }
  return "?";
}

std::optional<CoefficientKind> parse_kind(const std::string& name) {
  for (auto k : {CoefficientKind::Wintner, CoefficientKind::Carmichael, CoefficientKind::PWintner,
                 CoefficientKind::PCarmichael, CoefficientKind::PFlatWintner})
    if (name == kind_name(k)) return k;
  return std::nullopt;
}

bool kind_needs_prime(CoefficientKind kind) {
  return kind == CoefficientKind::PWintner || kind == CoefficientKind::PCarmichael ||
         kind == CoefficientKind::PFlatWintner;
}

const Truncated* CoefficientTable::find(std::uint64_t q) const {
  for (const auto& e : entries)
    if (e.q == q) return &e.value;
  return nullptr;
}

CoefficientTable build_coefficient_table(const ArithFn& F, CoefficientKind kind,
                                         const std::optional<SmoothContext>& ctx, std::uint64_t q_lo,
                                         std::uint64_t q_hi, std::uint64_t x) {
  if (kind_needs_prime(kind) && !ctx) throw std::invalid_argument(std::string(kind_name(kind)) + " needs a prime bound");
  if (q_lo == 0 || q_hi < q_lo) throw std::invalid_argument("coefficient table: invalid q range");
  CoefficientTable table{kind, ctx ? std::optional<std::uint64_t>(ctx->P()) : std::nullopt, x, {}};
  table.entries.resize(q_hi - q_lo + 1);
  parallel_for(table.entries.size(), [&](std::size_t i) {
    std::uint64_t q = q_lo + i;
    Truncated v;
    switch (kind) {
      case CoefficientKind::Wintner: v = wintner_coefficient(F, q, x); break;
      case CoefficientKind::Carmichael: v = carmichael_coefficient(F, q, x); break;
      case CoefficientKind::PWintner: v = p_wintner_coefficient(F, *ctx, q, x); break;
      case CoefficientKind::PCarmichael: v = p_carmichael_coefficient(F, *ctx, q, x); break;
      case CoefficientKind::PFlatWintner:
        v.value = pflat_wintner_coefficient(F, *ctx, q);
        v.complete = true;
        break;
    }
    table.entries[i] = {q, std::move(v)};
  });
  return table;
}

}  // namespace ramsmooth
