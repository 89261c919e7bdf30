#include "ramsmooth/arithfn.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include "ramsmooth/arith.hpp"

namespace ramsmooth {

TransformSupport TransformSupport::finite_set(std::vector<std::uint64_t> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return {SupportKind::Finite, std::move(elements), 0};
}

struct ArithFn::Impl {
  std::string name;
  std::optional<Oracle> eval;
  std::optional<Oracle> transform;
  FnTraits traits;
  std::optional<std::uint64_t> bound;

  mutable std::shared_mutex mutex;
  mutable std::unordered_map<std::uint64_t, Rational> memo;

  void check(std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument(name + ": argument must be positive");
    if (bound && n > *bound)
      throw std::out_of_range(name + ": argument " + std::to_string(n) + " exceeds domain bound " +
                              std::to_string(*bound));
  }
};

ArithFn ArithFn::from_values(std::string name, Oracle eval, FnTraits traits,
                             std::optional<Oracle> transform, std::optional<std::uint64_t> domain_bound) {
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->eval = std::move(eval);
  impl->transform = std::move(transform);
  impl->traits = std::move(traits);
  impl->bound = domain_bound;
  return ArithFn(std::move(impl));
}

ArithFn ArithFn::from_transform(std::string name, Oracle transform, FnTraits traits) {
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->transform = std::move(transform);
  impl->traits = std::move(traits);
  return ArithFn(std::move(impl));
}

const std::string& ArithFn::name() const { return impl_->name; }
const FnTraits& ArithFn::traits() const { return impl_->traits; }
std::optional<std::uint64_t> ArithFn::domain_bound() const { return impl_->bound; }
bool ArithFn::has_transform_oracle() const { return impl_->transform.has_value(); }

Rational ArithFn::operator()(std::uint64_t n) const {
  impl_->check(n);
  if (impl_->eval) return (*impl_->eval)(n);
  Rational total(0);
  const auto& support = impl_->traits.transform_support;
  if (support.kind == SupportKind::Finite) {
    for (std::uint64_t s : support.finite) {
      if (s > n) break;
      if (n % s == 0) total += (*impl_->transform)(s);
    }
    return total;
  }
  for (std::uint64_t d : divisors(n)) total += (*impl_->transform)(d);
  return total;
}

Rational ArithFn::transform(std::uint64_t d) const {
  impl_->check(d);
  if (impl_->transform) return (*impl_->transform)(d);
  {
    std::shared_lock lock(impl_->mutex);
    if (auto it = impl_->memo.find(d); it != impl_->memo.end()) return it->second;
  }
  Rational value(0);
  auto f = factorize(d);
  for (std::uint64_t e : divisors(f)) {
    int mu = mobius(d / e);
    if (mu == 0) continue;
    Rational v = (*impl_->eval)(e);
    if (mu > 0)
      value += v;
    else
      value -= v;
  }
  std::unique_lock lock(impl_->mutex);
  return impl_->memo.emplace(d, std::move(value)).first->second;
}

}  // namespace ramsmooth
