#include "ramsmooth/numeric.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ramsmooth {

Integer to_integer(std::uint64_t n) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return z;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r{Integer(static_cast<long>(num)), Integer(static_cast<long>(den))};
  r.canonicalize();
  return r;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r{num, den};
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Integer& n) { return n.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view body = text.substr(b, e - b);
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  std::string_view num = body, den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  Integer n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  if (negative) n = -n;
  return make_rational(n, d);
}

double to_double(const Rational& r) { return r.get_d(); }

std::string to_decimal(const Rational& r, int digits) {
  if (digits < 1) digits = 1;
  mpf_class f(0, static_cast<mp_bitcnt_t>(digits * 4 + 64));
  f = r;
  int n = gmp_snprintf(nullptr, 0, "%.*Fg", digits, f.get_mpf_t());
  std::string out(static_cast<std::size_t>(n) + 1, '\0');
  gmp_snprintf(out.data(), out.size(), "%.*Fg", digits, f.get_mpf_t());
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string to_decimal(double v, int digits) {
  if (digits < 1) digits = 1;
  if (digits > 17) digits = 17;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

SeriesValue SeriesValue::approximate(double v) {
  SeriesValue s;
  s.exact_.reset();
  s.approx_ = v;
  return s;
}

const Rational& SeriesValue::exact() const {
  if (!exact_) throw std::logic_error("series value is not exact");
  return *exact_;
}

SeriesValue& SeriesValue::operator+=(const SeriesValue& o) {
  if (exact_ && o.exact_) {
    *exact_ += *o.exact_;
    approx_ = to_double(*exact_);
  } else {
    exact_.reset();
    approx_ += o.approx_;
  }
  return *this;
}

SeriesValue& SeriesValue::operator-=(const SeriesValue& o) { return *this += -o; }

SeriesValue& SeriesValue::operator*=(const Rational& r) {
  if (exact_) {
    *exact_ *= r;
    approx_ = to_double(*exact_);
  } else {
    approx_ *= to_double(r);
  }
  return *this;
}

SeriesValue SeriesValue::operator-() const {
  SeriesValue s = *this;
  if (s.exact_) *s.exact_ = -*s.exact_;
  s.approx_ = -approx_;
  return s;
}

bool SeriesValue::is_zero() const { return exact_ ? sgn(*exact_) == 0 : approx_ == 0.0; }

double SeriesValue::magnitude() const { return std::fabs(approx_); }

std::string SeriesValue::str() const {
  if (exact_) return to_string(*exact_);
  return to_decimal(approx_, 17);
}

std::string SeriesValue::decimal(int digits) const {
  if (exact_) return to_decimal(*exact_, digits);
  return to_decimal(approx_, digits);
}

bool operator==(const SeriesValue& a, const SeriesValue& b) {
  if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
  if (a.exact_ || b.exact_) return false;
  return a.approx_ == b.approx_;
}

void SeriesSum::add_double(double v) {
  double t = sum_ + v;
  if (std::fabs(sum_) >= std::fabs(v))
    comp_ += (sum_ - t) + v;
  else
    comp_ += (v - t) + sum_;
  sum_ = t;
}

void SeriesSum::add(const Rational& term) {
  ++terms_;
  if (sgn(term) == 0) return;
  if (exact_) {
    Rational next = *exact_ + term;
    if (mpz_sizeinbase(next.get_den().get_mpz_t(), 2) <= exact_bits_) {
      *exact_ = std::move(next);
      return;
    }
    sum_ = to_double(*exact_);
    comp_ = 0.0;
    exact_.reset();
  }
  add_double(to_double(term));
}

void SeriesSum::add(const SeriesValue& term) {
  if (term.is_exact()) {
    add(term.exact());
    return;
  }
  ++terms_;
  if (exact_) {
    sum_ = to_double(*exact_);
    comp_ = 0.0;
    exact_.reset();
  }
  add_double(term.approx());
}

SeriesValue SeriesSum::value() const {
  if (exact_) return SeriesValue(*exact_);
  return SeriesValue::approximate(sum_ + comp_);
}

bool Trace::settling(double factor) const {
  if (points.size() < 5) return false;
  auto delta = [&](std::size_t i) {
    const auto& a = points[i - 1].value;
    const auto& b = points[i].value;
    if (a.is_exact() && b.is_exact()) return std::fabs(to_double(b.exact() - a.exact()));
    return std::fabs(b.approx() - a.approx());
  };
  std::size_t n = points.size() - 1;
  for (std::size_t i = n - 2; i <= n; ++i)
    if (delta(i) * factor > delta(i - 1)) return false;
  return true;
}

std::vector<std::uint64_t> doubling_cutoffs(std::uint64_t first, std::uint64_t x) {
  std::vector<std::uint64_t> out;
  if (first == 0) first = 1;
  for (std::uint64_t c = first; c <= x; c *= 2) {
    out.push_back(c);
    if (c > x / 2) break;
  }
  if (out.empty() || out.back() != x) out.push_back(x);
  return out;
}

TraceBuilder::TraceBuilder(std::uint64_t first, std::uint64_t cutoff, std::size_t exact_bits)
    : checkpoints_(doubling_cutoffs(first, cutoff)), cutoff_(cutoff), sum_(exact_bits) {}

void TraceBuilder::advance(std::uint64_t index) {
  while (next_ < checkpoints_.size() && checkpoints_[next_] < index) {
    trace_.points.push_back({checkpoints_[next_], sum_.value()});
    ++next_;
  }
}

void TraceBuilder::add(std::uint64_t index, const Rational& term) {
  if (index > cutoff_) throw std::logic_error("trace index beyond cutoff");
  advance(index);
  sum_.add(term);
}

void TraceBuilder::add(std::uint64_t index, const SeriesValue& term) {
  if (index > cutoff_) throw std::logic_error("trace index beyond cutoff");
  advance(index);
  sum_.add(term);
}

Truncated TraceBuilder::finish(bool complete) {
  advance(cutoff_ + 1);
  Truncated t;
  t.value = sum_.value();
  t.cutoff = cutoff_;
  t.complete = complete && t.value.is_exact();
  t.trace = std::move(trace_);
  return t;
}

}  // namespace ramsmooth
