#pragma once

#include <cstdint>
#include <vector>

#include "ramsmooth/arith.hpp"
#include "ramsmooth/numeric.hpp"

namespace ramsmooth {

// Three independent evaluations of c_q(a); all throw std::invalid_argument for q = 0.
// Sum over d | q of mu(d) times the full geometric sum of e_{q/d}(ka), k = 1..q/d.
std::int64_t csum_definition(std::uint64_t q, std::int64_t a);
// phi(q) mu(m) / phi(m) with m = q / (q, a), (q, 0) = q.
std::int64_t csum_holder(std::uint64_t q, std::int64_t a);
// Sum over d | (|a|, q) of d mu(q/d).
std::int64_t csum_kluyver(std::uint64_t q, std::int64_t a);

// Fast path used by the rest of the library.
std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t a);
// c_{p^alpha}(p^k); k may be large (any k >= alpha gives phi(p^alpha)).
std::int64_t ramanujan_sum_prime_power(std::uint64_t p, unsigned alpha, unsigned k);

// v_p(q) <= v_p(a) + 1 for every prime p.
bool csum_nonvanishing(std::uint64_t q, std::uint64_t a);

// (1/q) * sum_{l | q} c_l(a).
Rational orthogonality_divisor_indicator(std::uint64_t q, std::int64_t a);

// sum_{t in (P)} c_l(t) c_q(t) / t, in closed form.
Rational smooth_twisted_sum(std::uint64_t q, std::uint64_t ell, const SmoothContext& ctx);
// The same sum normalized by phi(l) prod_{p<=P} (1 - 1/p)^-1; equals [q = l].
Rational smooth_twisted_orthogonality(std::uint64_t q, std::uint64_t ell, const SmoothContext& ctx);

// c_q(a) == c_q(kappa(a)); requires square-free q.
bool csum_ipp_check(std::uint64_t q, std::uint64_t a);

// Moduli q in (P) with c_q(a) possibly nonzero: the divisors of prod_{p<=P} p^{v_p(a)+1}.
std::vector<std::uint64_t> rvl_moduli(std::uint64_t a, const SmoothContext& ctx);

}  // namespace ramsmooth
