#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ramsmooth/arith.hpp"
#include "ramsmooth/arithfn.hpp"
#include "ramsmooth/numeric.hpp"

namespace ramsmooth {

inline constexpr std::uint64_t kDefaultCutoff = 1u << 16;

// F'(d): the stored transform oracle when present, else memoized Moebius inversion.
Rational eratosthenes_transform(const ArithFn& F, std::uint64_t d);
// sum_{e | d} mu(d/e) F(e), always computed from values.
Rational mobius_inversion(const ArithFn& F, std::uint64_t d);
// sum_{d | n} F'(d)
Rational divisor_sum(const ArithFn& F, std::uint64_t n);

// a -> F(kappa(a)), flagged IPP; returns F itself when F is already flagged IPP.
ArithFn ippify(const ArithFn& F);
// sum over t | a with kappa(a/t) | t of mu^2(t) F(t)
Rational ippification_formula(const ArithFn& F, std::uint64_t a);

// sum_{d | a, d in (P)} F'(d)
Rational restrict_smooth(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a);
// sum over t in (P), t | a, a/t in )P( of F(t)
Rational mobius_switch(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a);
// a -> F(a_(P))
ArithFn restricted_smooth(const ArithFn& F, const SmoothContext& ctx);

// sum_{d | a, d in (P)-flat} F'(d)
Rational restrict_smooth_squarefree(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a);

// The three sums whose common value is F(a_(P)-flat):
//   t | a_(P), kappa(a_(P)/t) | t, weighted mu^2(t)
//   t in (P), t | kappa(a), kappa(a)/t in )P(
//   t in (P)-flat, t | a, kappa(a)/t in )P(
struct SquarefreeRestrictionForms {
  Rational kernel_form;
  Rational sifted_kernel_form;
  Rational flat_form;
};
SquarefreeRestrictionForms squarefree_restriction_forms(const ArithFn& F, const SmoothContext& ctx,
                                                        std::uint64_t a);

Truncated wintner_coefficient(const ArithFn& F, std::uint64_t q, std::uint64_t x);
Truncated p_wintner_coefficient(const ArithFn& F, const SmoothContext& ctx, std::uint64_t q, std::uint64_t x);
Rational pflat_wintner_coefficient(const ArithFn& F, const SmoothContext& ctx, std::uint64_t q);

Truncated carmichael_coefficient(const ArithFn& F, std::uint64_t q, std::uint64_t x);
Truncated p_carmichael_coefficient(const ArithFn& F, const SmoothContext& ctx, std::uint64_t q,
                                   std::uint64_t x);
// Normalized smooth t-series for the P-Carmichael coefficient; ipp_mode adds the weight
// mu^2(t) t / phi(t). Rejects q outside (P), or outside (P)-flat in ipp_mode.
Truncated p_carmichael_via_smooth_series(const ArithFn& F, const SmoothContext& ctx, std::uint64_t q,
                                         std::uint64_t x, bool ipp_mode);

struct DifferenceDiagnostic {
  SeriesValue lhs;       // (1/(phi(q) x)) sum_{a<=x} c_q(a) F(a) or F_(P)(a)
  SeriesValue main;      // sum_{d<=x, q | d, [d in (P)]} F'(d)/d
  SeriesValue residual;  // lhs - main
  SeriesValue budget;    // (1/x) sum_{d<=x, [d in (P)]} |F'(d)|
  double ratio = 0.0;    // |residual| / budget, 0 when both vanish
};
DifferenceDiagnostic coefficient_difference_diagnostic(const ArithFn& F, std::uint64_t q, std::uint64_t x,
                                                       const std::optional<SmoothContext>& ctx = std::nullopt);

// (mu^2 F)'(d) through the two-case square-free formula.
Rational squarefree_multiply_transform(const ArithFn& F, std::uint64_t d);

struct WaCheck {
  Trace wa;   // sum_{d<=X} |F'(d)|/d
  Trace dh;   // sum_{d<=X} 2^omega(d) |F'(d)|/d
  Trace etd;  // (1/X) sum_{d<=X} |F'(d)|
};
WaCheck wa_check(const ArithFn& F, std::uint64_t x);

enum class CoefficientKind { Wintner, Carmichael, PWintner, PCarmichael, PFlatWintner };

const char* kind_name(CoefficientKind kind);
std::optional<CoefficientKind> parse_kind(const std::string& name);
bool kind_needs_prime(CoefficientKind kind);

struct CoefficientEntry {
  std::uint64_t q;
  Truncated value;
};

struct CoefficientTable {
  CoefficientKind kind;
  std::optional<std::uint64_t> P;
  std::uint64_t cutoff = 0;
  std::vector<CoefficientEntry> entries;  // ascending q

  const Truncated* find(std::uint64_t q) const;
};

// One independent task per q; honors RAMSMOOTH_THREADS.
CoefficientTable build_coefficient_table(const ArithFn& F, CoefficientKind kind,
                                         const std::optional<SmoothContext>& ctx, std::uint64_t q_lo,
                                         std::uint64_t q_hi, std::uint64_t x);

}  // namespace ramsmooth
