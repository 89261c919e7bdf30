#include "ramsmooth/arith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ramsmooth {

namespace {

constexpr std::uint32_t kSieveLimit = 1u << 21;

// Smallest-prime-factor table, built once on first use and immutable afterwards.
const std::vector<std::uint32_t>& spf_table() {
  static const std::vector<std::uint32_t> table = [] {
    std::vector<std::uint32_t> spf(kSieveLimit + 1, 0);
    for (std::uint32_t i = 2; i <= kSieveLimit; ++i) {
      if (spf[i] != 0) continue;
      for (std::uint64_t j = i; j <= kSieveLimit; j += i)
        if (spf[j] == 0) spf[j] = i;
    }
    return spf;
  }();
  return table;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

void require_positive(std::uint64_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": argument must be positive");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n <= kSieveLimit) return spf_table()[n] == n;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % p == 0) return false;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n <= kSieveLimit) {
    const auto& spf = spf_table();
    for (std::uint64_t i = 2; i <= n; ++i)
      if (spf[i] == i) out.push_back(i);
    return out;
  }
  for (std::uint64_t i = 2; i <= n; ++i)
    if (is_prime(i)) out.push_back(i);
  return out;
}

PrimeBound::PrimeBound(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("prime bound must be a prime, got " + std::to_string(p));
}

SmoothContext::SmoothContext(PrimeBound bound)
    : bound_(bound), primes_(primes_up_to(bound.value())), primorial_(1), density_(1) {
  for (std::uint64_t p : primes_) {
    primorial_ *= to_integer(p);
    density_ *= make_rational(static_cast<std::int64_t>(p - 1), static_cast<std::int64_t>(p));
  }
}

bool SmoothContext::is_smooth(std::uint64_t n) const {
  require_positive(n, "is_smooth");
  for (std::uint64_t p : primes_)
    while (n % p == 0) n /= p;
  return n == 1;
}

bool SmoothContext::is_sifted(std::uint64_t n) const {
  require_positive(n, "is_sifted");
  for (std::uint64_t p : primes_)
    if (n % p == 0) return false;
  return true;
}

bool SmoothContext::is_smooth_squarefree(std::uint64_t n) const {
  require_positive(n, "is_smooth_squarefree");
  for (std::uint64_t p : primes_) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return n == 1;
}

std::uint64_t Factorization::product() const {
  std::uint64_t n = 1;
  for (const auto& [p, e] : pairs)
    for (unsigned i = 0; i < e; ++i) n *= p;
  return n;
}

unsigned Factorization::valuation(std::uint64_t p) const {
  for (const auto& pp : pairs)
    if (pp.prime == p) return pp.exponent;
  return 0;
}

Factorization factorize(std::uint64_t n) {
  require_positive(n, "factorize");
  Factorization f;
  auto push = [&](std::uint64_t p) {
    if (!f.pairs.empty() && f.pairs.back().prime == p)
      ++f.pairs.back().exponent;
    else
      f.pairs.push_back({p, 1});
  };
  if (n > kSieveLimit) {
    for (std::uint64_t p = 2; n > kSieveLimit && p * p <= n; p += (p == 2 ? 1 : 2)) {
      while (n % p == 0) {
        push(p);
        n /= p;
      }
    }
    if (n > kSieveLimit) {
      push(n);
      return f;
    }
  }
  const auto& spf = spf_table();
  while (n > 1) {
    std::uint64_t p = spf[n];
    push(p);
    n /= p;
  }
  return f;
}

int mobius(const Factorization& f) {
  for (const auto& pp : f.pairs)
    if (pp.exponent > 1) return 0;
  return f.pairs.size() % 2 ? -1 : 1;
}

int mobius(std::uint64_t n) { return mobius(factorize(n)); }

std::uint64_t totient(const Factorization& f) {
  std::uint64_t r = 1;
  for (const auto& [p, e] : f.pairs) {
    r *= p - 1;
    for (unsigned i = 1; i < e; ++i) r *= p;
  }
  return r;
}

std::uint64_t totient(std::uint64_t n) { return totient(factorize(n)); }

std::uint64_t kernel(std::uint64_t n) {
  std::uint64_t r = 1;
  for (const auto& pp : factorize(n).pairs) r *= pp.prime;
  return r;
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
  require_positive(n, "valuation");
  if (p < 2) throw std::invalid_argument("valuation: p must be at least 2");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

unsigned omega(std::uint64_t n) { return static_cast<unsigned>(factorize(n).pairs.size()); }

bool is_squarefree(std::uint64_t n) { return mobius(n) != 0; }

bool is_cubefree(std::uint64_t n) {
  for (const auto& pp : factorize(n).pairs)
    if (pp.exponent > 2) return false;
  return true;
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
  auto f = factorize(n);
  return f.pairs.empty() ? 1 : f.pairs.back().prime;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : f.pairs) {
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) { return divisors(factorize(n)); }

SmoothRoughSplit smooth_rough_split(std::uint64_t a, const SmoothContext& ctx) {
  require_positive(a, "smooth_rough_split");
  std::uint64_t s = 1, r = a;
  for (std::uint64_t p : ctx.primes())
    while (r % p == 0) {
      r /= p;
      s *= p;
    }
  return {s, r};
}

std::uint64_t smooth_part(std::uint64_t a, const SmoothContext& ctx) {
  return smooth_rough_split(a, ctx).smooth;
}

std::uint64_t smooth_squarefree_part(std::uint64_t a, const SmoothContext& ctx) {
  require_positive(a, "smooth_squarefree_part");
  std::uint64_t s = 1;
  for (std::uint64_t p : ctx.primes())
    if (a % p == 0) s *= p;
  return s;
}

std::vector<std::uint64_t> enumerate_smooth(const SmoothContext& ctx, std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("enumerate_smooth: x must be at least 1");
  const auto& primes = ctx.primes();
  std::vector<std::uint64_t> out{1};
  std::vector<std::size_t> idx(primes.size(), 0);
  std::vector<std::uint64_t> next(primes.size());
  constexpr std::uint64_t kDone = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t i = 0; i < primes.size(); ++i) next[i] = primes[i] <= x ? primes[i] : kDone;
  while (true) {
    std::uint64_t m = *std::min_element(next.begin(), next.end());
    if (m == kDone) break;
    out.push_back(m);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (next[i] != m) continue;
      std::uint64_t base = out[++idx[i]];
      next[i] = base <= x / primes[i] ? base * primes[i] : kDone;
    }
  }
  return out;
}

std::vector<std::uint64_t> enumerate_smooth_squarefree(const SmoothContext& ctx) {
  if (ctx.prime_count() > 24 || ctx.primorial() > to_integer(std::numeric_limits<std::uint64_t>::max()))
    throw std::overflow_error("enumerate_smooth_squarefree: primorial too large");
  std::vector<std::uint64_t> out{1};
  for (std::uint64_t p : ctx.primes()) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> enumerate_sifted(const SmoothContext& ctx, std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (ctx.is_sifted(n)) out.push_back(n);
  return out;
}

SiftedCount count_sifted(const SmoothContext& ctx, const Rational& x) {
  if (x < 1) throw std::invalid_argument("count_sifted: x must be at least 1");
  Integer X;
  mpz_fdiv_q(X.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  struct Term {
    Integer d;
    int mu;
  };
  std::vector<Term> terms{{Integer(1), 1}};
  for (std::uint64_t p : ctx.primes()) {
    std::size_t n = terms.size();
    Integer zp = to_integer(p);
    for (std::size_t i = 0; i < n; ++i) {
      Integer d = terms[i].d * zp;
      if (d <= X) terms.push_back({d, -terms[i].mu});
    }
  }
  SiftedCount out;
  out.count = 0;
  for (const auto& t : terms) {
    Integer q = X / t.d;
    if (t.mu > 0)
      out.count += q;
    else
      out.count -= q;
  }
  out.main = ctx.euler_density() * x;
  out.error = Rational(out.count) - out.main;
  return out;
}

PowerSeriesBound smooth_power_series(const SmoothContext& ctx, const Rational& delta,
                                     unsigned precision_bits) {
  if (delta <= 0) throw std::invalid_argument("smooth_power_series: delta must be positive (series diverges)");
  PowerSeriesBound out{Rational(1), Rational(1)};
  if (delta.get_den() == 1) {
    if (!delta.get_num().fits_ulong_p()) throw std::overflow_error("smooth_power_series: exponent too large");
    unsigned long k = delta.get_num().get_ui();
    for (std::uint64_t p : ctx.primes()) {
      Integer pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
      Rational f = make_rational(pk, pk - 1);
      out.lower *= f;
    }
    out.upper = out.lower;
    return out;
  }
  if (!delta.get_num().fits_ulong_p() || !delta.get_den().fits_ulong_p())
    throw std::overflow_error("smooth_power_series: exponent too large");
  unsigned long num = delta.get_num().get_ui(), den = delta.get_den().get_ui();
  for (std::uint64_t p : ctx.primes()) {
    // p^-delta lies in [L, L+1] / 2^b with L = floor(2^b p^(-num/den)).
    for (unsigned b = std::max(precision_bits, 8u);; b *= 2) {
      Integer N, D, L, two_b;
      mpz_ui_pow_ui(N.get_mpz_t(), 2, static_cast<unsigned long>(b) * den);
      mpz_ui_pow_ui(D.get_mpz_t(), p, num);
      Integer Q = N / D;
      mpz_root(L.get_mpz_t(), Q.get_mpz_t(), den);
      mpz_ui_pow_ui(two_b.get_mpz_t(), 2, b);
      if (L + 1 >= two_b) continue;
      out.lower *= make_rational(two_b, two_b - L);
      out.upper *= make_rational(two_b, two_b - L - 1);
      break;
    }
  }
  return out;
}

}  // namespace ramsmooth
