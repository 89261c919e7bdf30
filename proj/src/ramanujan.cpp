#include "ramsmooth/ramanujan.hpp"

#include <numeric>
#include <stdexcept>

namespace ramsmooth {

namespace {

std::uint64_t magnitude(std::int64_t a) {
  return a < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
}

void require_modulus(std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("Ramanujan sum modulus must be positive");
}

// (q, a) with the convention (q, 0) = q.
std::uint64_t gcd_with_zero(std::uint64_t q, std::uint64_t a) { return a == 0 ? q : std::gcd(q, a); }

std::uint64_t ipow(std::uint64_t p, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

}  // namespace

std::int64_t csum_definition(std::uint64_t q, std::int64_t a) {
  require_modulus(q);
  std::uint64_t m = magnitude(a);
  std::int64_t total = 0;
  for (std::uint64_t d : divisors(q)) {
    int mu = mobius(d);
    if (mu == 0) continue;
    std::uint64_t n = q / d;
    // sum_{k=1}^{n} e_n(k a) is n when n | a and 0 otherwise
    if (m % n == 0) total += mu * static_cast<std::int64_t>(n);
  }
  return total;
}

std::int64_t csum_holder(std::uint64_t q, std::int64_t a) {
  require_modulus(q);
  std::uint64_t m = q / gcd_with_zero(q, magnitude(a));
  int mu = mobius(m);
  if (mu == 0) return 0;
  return mu * static_cast<std::int64_t>(totient(q) / totient(m));
}

std::int64_t csum_kluyver(std::uint64_t q, std::int64_t a) {
  require_modulus(q);
  std::int64_t total = 0;
  for (std::uint64_t d : divisors(gcd_with_zero(q, magnitude(a))))
    total += static_cast<std::int64_t>(d) * mobius(q / d);
  return total;
}

std::int64_t ramanujan_sum_prime_power(std::uint64_t p, unsigned alpha, unsigned k) {
  if (alpha == 0) return 1;
  if (alpha <= k) return static_cast<std::int64_t>(ipow(p, alpha - 1) * (p - 1));
  if (alpha == k + 1) return -static_cast<std::int64_t>(ipow(p, k));
  return 0;
}

std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t a) {
  require_modulus(q);
  std::uint64_t m = magnitude(a);
  std::int64_t r = 1;
  for (const auto& [p, alpha] : factorize(q).pairs) {
    unsigned k = alpha;  // any k >= alpha behaves like v_p(0) = infinity
    if (m != 0) k = valuation(m, p);
    std::int64_t c = ramanujan_sum_prime_power(p, alpha, k);
    if (c == 0) return 0;
    r *= c;
  }
  return r;
}

bool csum_nonvanishing(std::uint64_t q, std::uint64_t a) {
  if (q == 0 || a == 0) throw std::invalid_argument("csum_nonvanishing: q and a must be positive");
  for (const auto& [p, alpha] : factorize(q).pairs)
    if (alpha > valuation(a, p) + 1) return false;
  return true;
}

Rational orthogonality_divisor_indicator(std::uint64_t q, std::int64_t a) {
  require_modulus(q);
  std::int64_t total = 0;
  for (std::uint64_t ell : divisors(q)) total += ramanujan_sum(ell, a);
  return make_rational(total, static_cast<std::int64_t>(q));
}

Rational smooth_twisted_sum(std::uint64_t q, std::uint64_t ell, const SmoothContext& ctx) {
  if (q == 0 || ell == 0 || !ctx.is_smooth(q) || !ctx.is_smooth(ell))
    throw std::invalid_argument("smooth_twisted_orthogonality: q and l must be P-smooth");
  Rational total(1);
  for (std::uint64_t p : ctx.primes()) {
    unsigned alpha = valuation(ell, p), beta = valuation(q, p);
    unsigned M = std::max(alpha, beta);
    Rational local(0);
    Integer pk(1);
    for (unsigned k = 0; k < M; ++k) {
      std::int64_t c = ramanujan_sum_prime_power(p, alpha, k) * ramanujan_sum_prime_power(p, beta, k);
      local += make_rational(Integer(static_cast<long>(c)), pk);
      pk *= to_integer(p);
    }
    // for K >= M both sums are the totients; the tail is a geometric series
    Integer phis = to_integer(static_cast<std::uint64_t>(ramanujan_sum_prime_power(p, alpha, M) *
                                                         ramanujan_sum_prime_power(p, beta, M)));
    local += make_rational(phis * to_integer(p), pk * to_integer(p - 1));
    total *= local;
  }
  return total;
}

Rational smooth_twisted_orthogonality(std::uint64_t q, std::uint64_t ell, const SmoothContext& ctx) {
  Rational s = smooth_twisted_sum(q, ell, ctx);
  return s * ctx.euler_density() / Rational(to_integer(totient(ell)));
}

bool csum_ipp_check(std::uint64_t q, std::uint64_t a) {
  if (q == 0 || a == 0) throw std::invalid_argument("csum_ipp_check: q and a must be positive");
  if (!is_squarefree(q)) throw std::invalid_argument("csum_ipp_check: q must be square-free");
  return ramanujan_sum(q, static_cast<std::int64_t>(a)) ==
         ramanujan_sum(q, static_cast<std::int64_t>(kernel(a)));
}

std::vector<std::uint64_t> rvl_moduli(std::uint64_t a, const SmoothContext& ctx) {
  if (a == 0) throw std::invalid_argument("rvl_moduli: a must be positive");
  Factorization f;
  for (std::uint64_t p : ctx.primes()) f.pairs.push_back({p, valuation(a, p) + 1});
  return divisors(f);
}

}  // namespace ramsmooth
