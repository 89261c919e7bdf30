#pragma once

#include <cstdint>
#include <vector>

#include "ramsmooth/numeric.hpp"

namespace ramsmooth {

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// A prime P >= 2; construction throws std::invalid_argument otherwise.
class PrimeBound {
 public:
  explicit PrimeBound(std::uint64_t p);
  std::uint64_t value() const { return p_; }

 private:
  std::uint64_t p_;
};

class SmoothContext {
 public:
  explicit SmoothContext(PrimeBound bound);
  explicit SmoothContext(std::uint64_t p) : SmoothContext(PrimeBound(p)) {}

  std::uint64_t P() const { return bound_.value(); }
  PrimeBound bound() const { return bound_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  std::size_t prime_count() const { return primes_.size(); }
  const Integer& primorial() const { return primorial_; }

  bool is_smooth(std::uint64_t n) const;
  bool is_sifted(std::uint64_t n) const;
  bool is_smooth_squarefree(std::uint64_t n) const;

  // prod_{p<=P} (1 - 1/p)
  const Rational& euler_density() const { return density_; }

 private:
  PrimeBound bound_;
  std::vector<std::uint64_t> primes_;
  Integer primorial_;
  Rational density_;
};

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::vector<PrimePower> pairs;
  std::uint64_t product() const;
  unsigned valuation(std::uint64_t p) const;
};

Factorization factorize(std::uint64_t n);
int mobius(std::uint64_t n);
std::uint64_t totient(std::uint64_t n);
std::uint64_t kernel(std::uint64_t n);
unsigned valuation(std::uint64_t n, std::uint64_t p);
unsigned omega(std::uint64_t n);
bool is_squarefree(std::uint64_t n);
bool is_cubefree(std::uint64_t n);
std::uint64_t largest_prime_factor(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::uint64_t> divisors(const Factorization& f);

std::uint64_t totient(const Factorization& f);
int mobius(const Factorization& f);

struct SmoothRoughSplit {
  std::uint64_t smooth;
  std::uint64_t rough;
};

SmoothRoughSplit smooth_rough_split(std::uint64_t a, const SmoothContext& ctx);
std::uint64_t smooth_part(std::uint64_t a, const SmoothContext& ctx);
std::uint64_t smooth_squarefree_part(std::uint64_t a, const SmoothContext& ctx);

std::vector<std::uint64_t> enumerate_smooth(const SmoothContext& ctx, std::uint64_t x);
std::vector<std::uint64_t> enumerate_smooth_squarefree(const SmoothContext& ctx);
std::vector<std::uint64_t> enumerate_sifted(const SmoothContext& ctx, std::uint64_t x);

struct SiftedCount {
  Integer count;
  Rational main;
  Rational error;
};

SiftedCount count_sifted(const SmoothContext& ctx, const Rational& x);

// Enclosure of prod_{p<=P} 1/(1 - p^-delta); lower == upper when delta is an integer.
struct PowerSeriesBound {
  Rational lower;
  Rational upper;
  bool exact() const { return lower == upper; }
};

PowerSeriesBound smooth_power_series(const SmoothContext& ctx, const Rational& delta,
                                     unsigned precision_bits = 64);

}  // namespace ramsmooth
