#include "ramsmooth/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "ramsmooth/funclib.hpp"
#include "ramsmooth/ramanujan.hpp"

namespace ramsmooth {

namespace {

std::int64_t as_signed(std::uint64_t a) { return static_cast<std::int64_t>(a); }

Rational integer_rational(std::int64_t c) { return Rational(Integer(static_cast<long>(c))); }

SeriesValue abs_value(const SeriesValue& v) {
  if (v.is_exact()) return sgn(v.exact()) < 0 ? -v : v;
  return SeriesValue::approximate(std::fabs(v.approx()));
}

void require_argument(std::uint64_t a) {
  if (a == 0) throw std::invalid_argument("series argument must be positive");
}

}  // namespace

const char* verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Holds: return "holds";
    case VerdictKind::FailsAt: return "fails-at-witness";
    case VerdictKind::Undetermined: return "undetermined";
  }
  return "?";
}

CoefficientFn constant_coefficient(const Rational& c) {
  return [c](std::uint64_t) { return SeriesValue(c); };
}

CoefficientFn table_coefficient(const CoefficientTable& table) {
  auto values = std::make_shared<std::unordered_map<std::uint64_t, SeriesValue>>();
  for (const auto& e : table.entries) values->emplace(e.q, e.value.value);
  return [values](std::uint64_t q) {
    auto it = values->find(q);
    return it == values->end() ? SeriesValue() : it->second;
  };
}

CoefficientFn map_coefficient(std::map<std::uint64_t, Rational> values) {
  auto shared = std::make_shared<const std::map<std::uint64_t, Rational>>(std::move(values));
  return [shared](std::uint64_t q) {
    auto it = shared->find(q);
    return it == shared->end() ? SeriesValue() : SeriesValue(it->second);
  };
}

SeriesValue evaluate_series(const CoefficientFn& G, const SummationMethod& method, std::uint64_t a) {
  require_argument(a);
  SeriesSum sum;
  if (const auto* classic = std::get_if<ClassicSummation>(&method)) {
    for (std::uint64_t q = 1; q <= classic->x; ++q) {
      std::int64_t c = ramanujan_sum(q, as_signed(a));
      if (c != 0) sum.add(G(q) * integer_rational(c));
    }
  } else {
    return smooth_series_sums(G, std::get<SmoothSummation>(method).ctx, a).signed_sum;
  }
  return sum.value();
}

std::vector<SeriesValue> classic_partial_sums(const CoefficientFn& G, std::uint64_t a, std::uint64_t x) {
  require_argument(a);
  std::vector<SeriesValue> out;
  out.reserve(x);
  SeriesSum sum;
  for (std::uint64_t q = 1; q <= x; ++q) {
    std::int64_t c = ramanujan_sum(q, as_signed(a));
    if (c != 0) sum.add(G(q) * integer_rational(c));
    out.push_back(sum.value());
  }
  return out;
}

SmoothSeriesSums smooth_series_sums(const CoefficientFn& G, const SmoothContext& ctx, std::uint64_t a) {
  require_argument(a);
  SeriesSum signed_sum, absolute_sum;
  for (std::uint64_t q : rvl_moduli(a, ctx)) {
    std::int64_t c = ramanujan_sum(q, as_signed(a));
    if (c == 0) continue;
    SeriesValue term = G(q) * integer_rational(c);
    signed_sum.add(term);
    absolute_sum.add(abs_value(term));
  }
  return {signed_sum.value(), absolute_sum.value()};
}

FlatExpansion::FlatExpansion(const ArithFn& F, const SmoothContext& ctx) {
  auto flat = enumerate_smooth_squarefree(ctx);
  std::vector<Rational> weight;
  weight.reserve(flat.size());
  for (std::uint64_t d : flat) weight.push_back(F.transform(d) / Rational(to_integer(d)));
  for (std::uint64_t q : flat) {
    Rational w(0);
    for (std::size_t i = 0; i < flat.size(); ++i)
      if (flat[i] % q == 0) w += weight[i];
    coeffs_.emplace_back(q, std::move(w));
  }
}

Rational FlatExpansion::operator()(std::uint64_t a) const {
  require_argument(a);
  Rational total(0);
  for (const auto& [q, w] : coeffs_) {
    if (sgn(w) == 0) continue;
    std::int64_t c = ramanujan_sum(q, as_signed(a));
    if (c != 0) total += w * integer_rational(c);
  }
  return total;
}

Rational local_expansion_flat(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a) {
  return FlatExpansion(F, ctx)(a);
}

struct SmoothExpansion::Cache {
  std::mutex mutex;
  std::unordered_map<std::uint64_t, Truncated> coefficients;
};

SmoothExpansion::SmoothExpansion(ArithFn F, SmoothContext ctx, std::uint64_t x)
    : F_(std::move(F)), ctx_(std::move(ctx)), x_(x), cache_(std::make_shared<Cache>()) {}

const Truncated& SmoothExpansion::coefficient(std::uint64_t q) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->coefficients.find(q); it != cache_->coefficients.end()) return it->second;
  }
  Truncated t = p_wintner_coefficient(F_, ctx_, q, x_);
  std::lock_guard lock(cache_->mutex);
  return cache_->coefficients.emplace(q, std::move(t)).first->second;
}

SeriesValue SmoothExpansion::operator()(std::uint64_t a) const {
  require_argument(a);
  SeriesSum sum;
  for (std::uint64_t q : rvl_moduli(a, ctx_)) {
    std::int64_t c = ramanujan_sum(q, as_signed(a));
    if (c == 0) continue;
    const Truncated& w = coefficient(q);
    if (w.value.is_zero()) continue;
    sum.add(w.value * integer_rational(c));
  }
  return sum.value();
}

SeriesValue local_expansion_smooth(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a, std::uint64_t x) {
  return SmoothExpansion(F, ctx, x)(a);
}

UniquenessReport uniqueness_check(const ArithFn& F, const SmoothContext& ctx,
                                  const std::map<std::uint64_t, Rational>& G, UniquenessMode mode,
                                  const UniquenessProbe& probe) {
  for (const auto& [q, v] : G) {
    if (sgn(v) == 0) continue;
    bool ok = mode == UniquenessMode::SquareFree ? q != 0 && ctx.is_smooth_squarefree(q) : q != 0 && ctx.is_smooth(q);
    if (!ok)
      throw std::invalid_argument("uniqueness_check: G has support at q = " + std::to_string(q) + " outside " +
                                  (mode == UniquenessMode::SquareFree ? "(P)-flat" : "(P)"));
  }
  UniquenessReport report;
  auto coeff = map_coefficient(G);
  auto G_at = [&](std::uint64_t q) {
    auto it = G.find(q);
    return it == G.end() ? Rational(0) : it->second;
  };

  std::uint64_t a_max = probe.a_max;
  if (a_max == 0) {
    Integer sq = ctx.primorial() * ctx.primorial();
    a_max = sq.fits_ulong_p() && sq.get_ui() <= 1000000 ? sq.get_ui() : 1000000;
  }

  std::optional<std::uint64_t> failing_argument;
  for (std::uint64_t a : enumerate_smooth(ctx, a_max)) {
    SeriesValue expansion = smooth_series_sums(coeff, ctx, a).signed_sum;
    Rational target = F(a);
    bool agree = expansion.is_exact() ? expansion.exact() == target
                                      : std::fabs(expansion.approx() - to_double(target)) <= probe.tolerance;
    if (!agree) {
      failing_argument = a;
      break;
    }
  }

  bool weighted = mode == UniquenessMode::SquareFree && F.traits().is_ipp;
  std::optional<std::uint64_t> extraction_gap;
  for (std::uint64_t ell : enumerate_smooth(ctx, probe.q_max)) {
    if (mode == UniquenessMode::SquareFree && !ctx.is_smooth_squarefree(ell)) continue;
    Truncated win = p_wintner_coefficient(F, ctx, ell, probe.x);
    if (win.value.is_exact() && win.complete && win.value.exact() != G_at(ell) && !report.differing_modulus)
      report.differing_modulus = ell;
    SeriesValue e = p_carmichael_via_smooth_series(F, ctx, ell, probe.x, weighted).value;
    report.extracted.emplace_back(ell, e);
    if (std::fabs(e.approx() - to_double(G_at(ell))) > probe.tolerance && !extraction_gap) extraction_gap = ell;
  }

  if (failing_argument) {
    std::string note = "G does not expand F_(P) at a = " + std::to_string(*failing_argument);
    if (report.differing_modulus) note += "; G differs from the P-Wintner coefficient at q = " +
                                          std::to_string(*report.differing_modulus);
    report.verdict = Verdict::fails_at(*failing_argument, note);
  } else if (extraction_gap) {
    report.verdict = Verdict::undetermined("extracted coefficient at q = " + std::to_string(*extraction_gap) +
                                           " differs from G beyond tolerance at the chosen cutoff");
  } else if (report.differing_modulus) {
    report.verdict = Verdict::undetermined("G expands F_(P) on the tested range but differs from the P-Wintner "
                                           "coefficient at q = " + std::to_string(*report.differing_modulus));
  } else {
    report.verdict = Verdict::holds("G agrees with the P-Wintner coefficients on q <= " +
                                    std::to_string(probe.q_max));
  }
  return report;
}

NslIdentity nsl_ipp_identity(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a, std::uint64_t x) {
  if (a == 0 || !ctx.is_smooth_squarefree(a))
    throw ScopeError("nsl_ipp_identity: a must be P-smooth and square-free");
  NslIdentity out;
  out.lhs = (make_rational(to_integer(a), to_integer(totient(a))) - 1) * F(a);
  ArithFn G = mu2_times_id_over_phi(F);
  SeriesSum rhs;
  for (std::uint64_t k : enumerate_smooth_squarefree(ctx)) {
    // l = s k with s | (k, a), s > 1 square-free: cube-free, not square-free, l / kappa(l) = s
    for (std::uint64_t s : divisors(std::gcd(k, a))) {
      if (s == 1) continue;
      std::uint64_t ell = s * k;
      out.moduli.push_back(ell);
      std::int64_t c = ramanujan_sum(ell, as_signed(a));
      if (c == 0) continue;
      rhs.add(p_wintner_coefficient(G, ctx, ell, x).value * integer_rational(c));
    }
  }
  std::sort(out.moduli.begin(), out.moduli.end());
  out.rhs = rhs.value();
  out.residual = SeriesValue(out.lhs) - out.rhs;
  return out;
}

CarmichaelIppReport carmichael_ipp_suite(const ArithFn& F, const SmoothContext& ctx, std::uint64_t q_lo,
                                    std::uint64_t q_hi, std::uint64_t x) {
  if (!F.traits().is_nsl) throw ScopeError("carmichael_ipp_suite: F must carry the NSL growth flag");
  CarmichaelIppReport report;
  report.used_ippification = !F.traits().is_ipp;
  ArithFn lhs_fn = ippify(F);
  ArithFn rhs_fn = mu2_times_id_over_phi(F);
  for (std::uint64_t q = std::max<std::uint64_t>(q_lo, 1); q <= q_hi; ++q) {
    if (!ctx.is_smooth_squarefree(q)) continue;
    CarmichaelComparison row{q, p_carmichael_coefficient(lhs_fn, ctx, q, x).value,
                             p_carmichael_coefficient(rhs_fn, ctx, q, x).value, {}};
    row.residual = row.lhs - row.rhs;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace ramsmooth
