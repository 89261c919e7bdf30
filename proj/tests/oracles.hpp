#pragma once

// Brute-force reference implementations, written independently of the library code paths.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline std::map<u64, unsigned> trial_factor(u64 n) {
  std::map<u64, unsigned> f;
  for (u64 p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  if (n > 1) ++f[n];
  return f;
}

inline bool prime(u64 n) {
  if (n < 2) return false;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

inline int mu(u64 n) {
  int m = 1;
  for (auto [p, e] : trial_factor(n)) {
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

inline u64 phi(u64 n) {
  u64 r = n;
  for (auto [p, e] : trial_factor(n)) r = r / p * (p - 1);
  return r;
}

inline u64 phi_count(u64 n) {
  u64 count = 0;
  for (u64 j = 1; j <= n; ++j)
    if (std::gcd(j, n) == 1) ++count;
  return count;
}

inline u64 kappa(u64 n) {
  u64 k = 1;
  for (auto [p, e] : trial_factor(n)) k *= p;
  return k;
}

inline u64 largest_prime_factor(u64 n) {
  auto f = trial_factor(n);
  return f.empty() ? 1 : f.rbegin()->first;
}

inline unsigned omega(u64 n) { return static_cast<unsigned>(trial_factor(n).size()); }

inline bool smooth(u64 n, u64 P) { return largest_prime_factor(n) <= P; }

inline bool sifted(u64 n, u64 P) {
  for (u64 p = 2; p <= P && p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

inline bool squarefree(u64 n) {
  for (u64 p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

inline bool cubefree(u64 n) {
  for (u64 p = 2; p * p * p <= n; ++p)
    if (n % (p * p * p) == 0) return false;
  return true;
}

// largest divisor of n that is P-smooth
inline u64 smooth_part(u64 n, u64 P) {
  u64 s = 1;
  for (u64 d = 1; d <= n; ++d)
    if (n % d == 0 && smooth(d, P)) s = d;
  return s;
}

// largest square-free P-smooth divisor
inline u64 flat_part(u64 n, u64 P) {
  u64 s = 1;
  for (u64 p = 2; p <= P; ++p)
    if (prime(p) && n % p == 0) s *= p;
  return s;
}

// c_q(a) as the cosine sum over reduced residues, rounded; `gap` receives the
// distance of the raw sum from the nearest integer.
inline i64 csum_cosine(u64 q, i64 a, double* gap = nullptr) {
  long double s = 0;
  const long double tau = 2.0L * 3.141592653589793238462643383279502884L;
  i64 m = static_cast<i64>(q);
  i64 r = ((a % m) + m) % m;
  for (u64 j = 1; j <= q; ++j)
    if (std::gcd(j, q) == 1) s += std::cos(tau * static_cast<long double>((static_cast<i64>(j) * r) % m) / m);
  long double rounded = std::round(s);
  if (gap) *gap = static_cast<double>(std::fabs(s - rounded));
  return static_cast<i64>(rounded);
}

// Hoelder's formula from the brute primitives.
inline i64 csum_holder(u64 q, i64 a) {
  u64 g = a == 0 ? q : std::gcd(q, static_cast<u64>(a < 0 ? -a : a));
  u64 m = q / g;
  return static_cast<i64>(phi(q)) * mu(m) / static_cast<i64>(phi(m));
}

inline std::vector<u64> smooth_upto(u64 P, u64 x) {
  std::vector<u64> out;
  for (u64 n = 1; n <= x; ++n)
    if (smooth(n, P)) out.push_back(n);
  return out;
}

inline std::vector<u64> primes_upto(u64 P) {
  std::vector<u64> out;
  for (u64 p = 2; p <= P; ++p)
    if (prime(p)) out.push_back(p);
  return out;
}

// P-smooth numbers with v_p(n) <= cap(p), by recursion over exponents.
template <class Cap>
std::vector<u64> smooth_boxed(u64 P, Cap cap) {
  std::vector<u64> out{1};
  for (u64 p : primes_upto(P)) {
    std::vector<u64> next;
    for (u64 n : out) {
      u64 v = n;
      for (unsigned k = 0; k <= cap(p); ++k, v *= p) next.push_back(v);
    }
    out.swap(next);
  }
  return out;
}

// Random finite table d -> F'(d): values of the form num/den with small nonzero num.
inline std::map<u64, mpq_class> random_table(u64 seed, const std::vector<u64>& candidates, std::size_t size) {
  std::mt19937_64 rng(seed);
  std::map<u64, mpq_class> t;
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  auto draw = [&] {
    int n = 0;
    while (n == 0) n = num(rng);
    mpq_class v(n, den(rng));
    v.canonicalize();
    return v;
  };
  t[1] = draw();
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  for (std::size_t tries = 0; t.size() < size && tries < 100 * size; ++tries) t[candidates[pick(rng)]] = draw();
  return t;
}

inline std::vector<u64> iota(u64 lo, u64 hi) {
  std::vector<u64> v;
  for (u64 n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

inline mpq_class divisor_sum(const std::map<u64, mpq_class>& t, u64 n) {
  mpq_class s = 0;
  for (const auto& [d, v] : t)
    if (n % d == 0) s += v;
  return s;
}

}  // namespace oracle
