#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsmooth/numeric.hpp"

namespace ramsmooth {

// Thrown when a formula is requested outside its class (e.g. an argument not P-smooth).
class ScopeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SupportKind { Unknown, SquareFree, Finite, Smooth };

struct TransformSupport {
  SupportKind kind = SupportKind::Unknown;
  std::vector<std::uint64_t> finite;  // ascending, for SupportKind::Finite
  std::uint64_t smooth_bound = 0;     // for SupportKind::Smooth: F' supported in (P0)

  static TransformSupport unknown() { return {}; }
  static TransformSupport square_free() { return {SupportKind::SquareFree, {}, 0}; }
  static TransformSupport finite_set(std::vector<std::uint64_t> elements);
  static TransformSupport smooth(std::uint64_t P0) { return {SupportKind::Smooth, {}, P0}; }
};

struct FnTraits {
  bool is_ipp = false;
  bool is_nsl = false;  // trusted growth flag, never verified
  TransformSupport transform_support;
};

using Oracle = std::function<Rational(std::uint64_t)>;

// An arithmetic function given by exact oracles. Copies share one memo table of F'.
class ArithFn {
 public:
  static ArithFn from_values(std::string name, Oracle eval, FnTraits traits,
                             std::optional<Oracle> transform = std::nullopt,
                             std::optional<std::uint64_t> domain_bound = std::nullopt);
  static ArithFn from_transform(std::string name, Oracle transform, FnTraits traits);

  const std::string& name() const;
  const FnTraits& traits() const;
  std::optional<std::uint64_t> domain_bound() const;
  bool has_transform_oracle() const;

  // F(n) and F'(n); both throw std::invalid_argument for n = 0 and std::out_of_range
  // past a finite domain bound.
  Rational operator()(std::uint64_t n) const;
  Rational transform(std::uint64_t d) const;

 private:
  struct Impl;
  explicit ArithFn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace ramsmooth
