#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ramsmooth/arith.hpp"
#include "ramsmooth/arithfn.hpp"
#include "ramsmooth/transforms.hpp"

namespace ramsmooth {

enum class VerdictKind { Holds, FailsAt, Undetermined };

struct Verdict {
  VerdictKind kind = VerdictKind::Undetermined;
  std::optional<std::uint64_t> witness;
  std::string note;

  static Verdict holds(std::string note = {}) { return {VerdictKind::Holds, std::nullopt, std::move(note)}; }
  static Verdict fails_at(std::uint64_t w, std::string note = {}) { return {VerdictKind::FailsAt, w, std::move(note)}; }
  static Verdict undetermined(std::string note) { return {VerdictKind::Undetermined, std::nullopt, std::move(note)}; }
};

const char* verdict_name(VerdictKind kind);

// Coefficient q -> G(q) of a Ramanujan series.
using CoefficientFn = std::function<SeriesValue(std::uint64_t)>;

CoefficientFn constant_coefficient(const Rational& c);
CoefficientFn table_coefficient(const CoefficientTable& table);
CoefficientFn map_coefficient(std::map<std::uint64_t, Rational> values);

struct ClassicSummation {
  std::uint64_t x;
};
struct SmoothSummation {
  SmoothContext ctx;
};
using SummationMethod = std::variant<ClassicSummation, SmoothSummation>;

// Classic: sum_{q<=x} G(q) c_q(a). Smooth: sum over q in (P), a finite sum by the
// vertical limit of the Ramanujan sums.
SeriesValue evaluate_series(const CoefficientFn& G, const SummationMethod& method, std::uint64_t a);

// Running partial sums sum_{q<=X} G(q) c_q(a) for X = 1..x.
std::vector<SeriesValue> classic_partial_sums(const CoefficientFn& G, std::uint64_t a, std::uint64_t x);

struct SmoothSeriesSums {
  SeriesValue signed_sum;
  SeriesValue absolute_sum;
};
SmoothSeriesSums smooth_series_sums(const CoefficientFn& G, const SmoothContext& ctx, std::uint64_t a);

// Precomputed flat P-local expansion a -> sum_{q in (P)-flat} Win^flat_q F c_q(a).
class FlatExpansion {
 public:
  FlatExpansion(const ArithFn& F, const SmoothContext& ctx);
  Rational operator()(std::uint64_t a) const;
  const std::vector<std::pair<std::uint64_t, Rational>>& coefficients() const { return coeffs_; }

 private:
  std::vector<std::pair<std::uint64_t, Rational>> coeffs_;
};

Rational local_expansion_flat(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a);

// a -> sum over the vertical-limit moduli of Win^(P)_q F c_q(a), with memoized coefficients.
class SmoothExpansion {
 public:
  SmoothExpansion(ArithFn F, SmoothContext ctx, std::uint64_t x);
  SeriesValue operator()(std::uint64_t a) const;
  const Truncated& coefficient(std::uint64_t q) const;

 private:
  struct Cache;
  ArithFn F_;
  SmoothContext ctx_;
  std::uint64_t x_;
  std::shared_ptr<Cache> cache_;
};

SeriesValue local_expansion_smooth(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a, std::uint64_t x);

enum class UniquenessMode { Decay, SquareFree };

struct UniquenessProbe {
  std::uint64_t q_max = 50;
  std::uint64_t a_max = 0;  // 0: the primorial squared
  std::uint64_t x = 1u << 20;
  double tolerance = 1e-3;
};

struct UniquenessReport {
  Verdict verdict;
  std::optional<std::uint64_t> differing_modulus;  // first q with G(q) != Win^(P)_q F exactly
  std::vector<std::pair<std::uint64_t, SeriesValue>> extracted;
};

// G must be supported in (P) (decay) or (P)-flat (square-free); throws otherwise.
UniquenessReport uniqueness_check(const ArithFn& F, const SmoothContext& ctx,
                                  const std::map<std::uint64_t, Rational>& G, UniquenessMode mode,
                                  const UniquenessProbe& probe = {});

struct NslIdentity {
  Rational lhs;
  SeriesValue rhs;
  SeriesValue residual;
  std::vector<std::uint64_t> moduli;  // the l actually summed
};
// Requires a in (P)-flat.
NslIdentity nsl_ipp_identity(const ArithFn& F, const SmoothContext& ctx, std::uint64_t a, std::uint64_t x);

struct CarmichaelComparison {
  std::uint64_t q;
  SeriesValue lhs;
  SeriesValue rhs;
  SeriesValue residual;
};
struct CarmichaelIppReport {
  bool used_ippification = false;  // F not IPP: compares the IPPification instead
  std::vector<CarmichaelComparison> rows;
};
// Requires the NSL flag on F.
CarmichaelIppReport carmichael_ipp_suite(const ArithFn& F, const SmoothContext& ctx, std::uint64_t q_lo,
                                    std::uint64_t q_hi, std::uint64_t x);

}  // namespace ramsmooth
