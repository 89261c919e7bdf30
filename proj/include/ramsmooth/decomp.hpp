#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramsmooth/arith.hpp"
#include "ramsmooth/arithfn.hpp"
#include "ramsmooth/expansions.hpp"
#include "ramsmooth/transforms.hpp"

namespace ramsmooth {

struct IrregularSeries {
  std::uint64_t d;
  std::uint64_t P;
  Truncated series;  // over r in )P(, 1 < r <= cutoff
};

IrregularSeries irregular_series(const ArithFn& F, const SmoothContext& ctx, std::uint64_t d, std::uint64_t x);

struct FPrimeDecomposition {
  std::uint64_t d;
  Rational lhs;           // F'(d)
  SeriesValue regular;    // d sum_{K in (P)-flat} mu(K) Win_{dK} F, each over multiples <= d x
  SeriesValue irregular;  // Irr_d over r <= x
  SeriesValue residual;   // lhs - regular + irregular
};

FPrimeDecomposition wod_fprime(const ArithFn& F, const SmoothContext& ctx, std::uint64_t d, std::uint64_t x);

struct DecompositionRow {
  std::uint64_t a;
  bool in_scope = true;
  std::string note;
  Rational value;              // F(a)
  SeriesValue smooth_part;     // sum_q Win_q F c_q(a), Win over d <= x
  SeriesValue irregular_part;  // sum_{d | a} Irr_d over r <= x/d
  SeriesValue reconstruction;  // smooth - irregular
  SeriesValue residual;        // value - reconstruction
};

// Throws ScopeError for a outside (P).
DecompositionRow wod_f(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a, std::uint64_t x);

struct CharacterizationCell {
  std::uint64_t d;
  std::uint64_t P;
  Truncated value;
};
struct CharacterizationReport {
  std::vector<CharacterizationCell> cells;
  std::vector<std::pair<std::uint64_t, Verdict>> decay;  // per d
};
CharacterizationReport characterization_diagnostic(const ArithFn& F, const std::vector<std::uint64_t>& ds,
                                                   const std::vector<std::uint64_t>& primes, std::uint64_t x);

struct DreamPoint {
  std::uint64_t P;
  SeriesValue value;
  SeriesValue gap;  // value - F(a)
};
std::vector<DreamPoint> dream_expansion(const ArithFn& F, std::uint64_t a, const std::vector<std::uint64_t>& primes,
                                        std::uint64_t x);

struct NullExpansion {
  Integer signed_sum;
  Integer absolute_sum;
};
NullExpansion null_function_smooth_expansion(std::uint64_t a, const SmoothContext& ctx);

struct WintnerProbe {
  std::uint64_t P_max = 50;
  std::uint64_t q_max = 1000;
  std::uint64_t x = 1u << 16;
};
struct WintnerPrimeRange {
  std::optional<std::uint64_t> prime;  // P_F
  std::optional<std::uint64_t> range;  // Q_F
  bool determined = false;
  std::vector<std::uint64_t> support;  // of Win F, when determined and finite
  std::string note;
};
WintnerPrimeRange wintner_prime_and_range(const ArithFn& F, const WintnerProbe& probe = {});

struct Parts {
  std::uint64_t a;
  Rational value;
  std::uint64_t wintner_prime;
  SeriesValue smooth;                  // S_F(a)
  std::optional<SeriesValue> analytic;  // A_F(a), finite Wintner support only
  SeriesValue irregular;               // I_F(a)
  SeriesValue smooth_residual;         // F - (S_F - I_F)
  std::optional<SeriesValue> analytic_residual;
};
// Throws ScopeError unless F' is declared finite or smooth-supported.
Parts parts(const ArithFn& F, std::uint64_t a, std::uint64_t x);

struct ReefVerdicts {
  Verdict reef;
  Verdict weak_reef;
};
ReefVerdicts reef_predicates(const ArithFn& F, std::uint64_t a_lo, std::uint64_t a_hi, std::uint64_t x);

struct WadResult {
  std::uint64_t d;
  Rational a_d;
  SeriesValue regular;
  SeriesValue irregularity;
  SeriesValue residual;
};
WadResult wintner_average_decomposition(const Oracle& seq, const SmoothContext& ctx, std::uint64_t d,
                                        std::uint64_t x);

struct DecompositionReport {
  std::string function;
  std::uint64_t P;
  std::uint64_t cutoff;
  std::vector<DecompositionRow> rows;
  ReefVerdicts reef;
  WintnerPrimeRange wintner;
};
DecompositionReport decomposition_report(const ArithFn& F, const SmoothContext& ctx,
                                         const std::vector<std::uint64_t>& arguments, std::uint64_t x);

}  // namespace ramsmooth
