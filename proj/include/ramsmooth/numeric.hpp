#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ramsmooth {

using Integer = mpz_class;
using Rational = mpq_class;

Integer to_integer(std::uint64_t n);
Rational make_rational(std::int64_t num, std::int64_t den = 1);
Rational make_rational(const Integer& num, const Integer& den);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& n);

// Accepts "k", "-k", "p/q"; throws std::invalid_argument on anything else or q = 0.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);
std::string to_decimal(const Rational& r, int digits);
std::string to_decimal(double v, int digits);

// Default budget for exact accumulation of truncated series (bits in the denominator).
inline constexpr std::size_t kExactDenominatorBits = 4096;

// A value of a possibly truncated series: exact when every term was accumulated as a
// rational, otherwise only the compensated double is meaningful.
class SeriesValue {
 public:
  SeriesValue() : exact_(Rational(0)), approx_(0.0) {}
  SeriesValue(const Rational& r) : exact_(r), approx_(to_double(r)) {}
  SeriesValue(std::int64_t n) : SeriesValue(Rational(n)) {}

  static SeriesValue approximate(double v);

  bool is_exact() const { return exact_.has_value(); }
  const Rational& exact() const;  // throws std::logic_error when inexact
  double approx() const { return approx_; }

  SeriesValue& operator+=(const SeriesValue& o);
  SeriesValue& operator-=(const SeriesValue& o);
  SeriesValue& operator*=(const Rational& r);

  friend SeriesValue operator+(SeriesValue a, const SeriesValue& b) { return a += b; }
  friend SeriesValue operator-(SeriesValue a, const SeriesValue& b) { return a -= b; }
  friend SeriesValue operator*(SeriesValue a, const Rational& r) { return a *= r; }
  SeriesValue operator-() const;

  bool is_zero() const;
  double magnitude() const;

  std::string str() const;  // "p/q" when exact, else %.17g
  std::string decimal(int digits) const;

  friend bool operator==(const SeriesValue& a, const SeriesValue& b);

 private:
  std::optional<Rational> exact_;
  double approx_;
};

// Exact rational accumulator that degrades to a Neumaier-compensated double once the
// running denominator exceeds the bit budget.
class SeriesSum {
 public:
  explicit SeriesSum(std::size_t exact_bits = kExactDenominatorBits) : exact_bits_(exact_bits) {}

  void add(const Rational& term);
  void add(const SeriesValue& term);
  SeriesValue value() const;
  bool exact() const { return exact_.has_value(); }
  std::size_t terms() const { return terms_; }

 private:
  void add_double(double v);

  std::size_t exact_bits_;
  std::optional<Rational> exact_ = Rational(0);
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::size_t terms_ = 0;
};

struct TracePoint {
  std::uint64_t cutoff;
  SeriesValue value;
};

struct Trace {
  std::vector<TracePoint> points;

  // Diagnostic only: the last three successive deltas each shrink by at least `factor`.
  bool settling(double factor = 1.5) const;
};

// first, 2*first, 4*first, ... up to x, then x itself if not already present.
std::vector<std::uint64_t> doubling_cutoffs(std::uint64_t first, std::uint64_t x);

// Result of a truncated series.
struct Truncated {
  SeriesValue value;
  std::uint64_t cutoff = 0;
  bool complete = false;  // every nonzero term was included, so no truncation happened
  Trace trace;

  bool settled() const { return complete || trace.settling(); }
};

// Accumulates terms indexed by a nondecreasing index and snapshots the running sum at
// doubling cutoffs.
class TraceBuilder {
 public:
  TraceBuilder(std::uint64_t first, std::uint64_t cutoff,
               std::size_t exact_bits = kExactDenominatorBits);

  void add(std::uint64_t index, const Rational& term);
  void add(std::uint64_t index, const SeriesValue& term);
  Truncated finish(bool complete = false);

 private:
  void advance(std::uint64_t index);

  std::vector<std::uint64_t> checkpoints_;
  std::size_t next_ = 0;
  std::uint64_t cutoff_;
  SeriesSum sum_;
  Trace trace_;
};

}  // namespace ramsmooth
