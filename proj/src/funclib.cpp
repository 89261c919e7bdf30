#include "ramsmooth/funclib.hpp"

#include <mpfr.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "ramsmooth/arith.hpp"
#include "ramsmooth/transforms.hpp"

namespace ramsmooth {

namespace {

Rational from_u64(std::uint64_t n) { return Rational(to_integer(n)); }

Rational sigma_over_id_value(std::uint64_t n) {
  Integer sigma(1);
  for (const auto& [p, e] : factorize(n).pairs) {
    Integer term(1), pk(1);
    for (unsigned i = 0; i < e; ++i) {
      pk *= to_integer(p);
      term += pk;
    }
    sigma *= term;
  }
  return make_rational(sigma, to_integer(n));
}

Rational phi_transform(std::uint64_t d) {
  Integer r(1);
  for (const auto& [p, e] : factorize(d).pairs) {
    if (e == 1) {
      r *= Integer(static_cast<long>(p) - 2);
    } else {
      Integer t = to_integer(p - 1);
      t *= t;
      for (unsigned i = 2; i < e; ++i) t *= to_integer(p);
      r *= t;
    }
  }
  return Rational(r);
}

// 1/log d rounded to the nearest multiple of 2^-64.
Rational inverse_log_dyadic(std::uint64_t d) {
  mpfr_t x;
  mpfr_init2(x, 192);
  mpfr_set_ui(x, d, MPFR_RNDN);
  mpfr_log(x, x, MPFR_RNDN);
  mpfr_ui_div(x, 1, x, MPFR_RNDN);
  mpfr_mul_2ui(x, x, 64, MPFR_RNDN);
  Integer n;
  mpfr_get_z(n.get_mpz_t(), x, MPFR_RNDN);
  mpfr_clear(x);
  Integer two64;
  mpz_ui_pow_ui(two64.get_mpz_t(), 2, 64);
  return make_rational(n, two64);
}

FnTraits traits(bool ipp, bool nsl, TransformSupport support) { return {ipp, nsl, std::move(support)}; }

ArithFn make_builtin(std::string_view name) {
  if (name == "zero")
    return ArithFn::from_values("zero", [](std::uint64_t) { return Rational(0); },
                                traits(true, true, TransformSupport::finite_set({})),
                                Oracle([](std::uint64_t) { return Rational(0); }));
  if (name == "one")
    return ArithFn::from_values("one", [](std::uint64_t) { return Rational(1); },
                                traits(true, true, TransformSupport::finite_set({1})),
                                Oracle([](std::uint64_t d) { return Rational(d == 1 ? 1 : 0); }));
  if (name == "id")
    return ArithFn::from_values("id", from_u64, traits(false, false, TransformSupport::unknown()),
                                Oracle([](std::uint64_t d) { return from_u64(totient(d)); }));
  if (name == "omega")
    return ArithFn::from_values("omega", [](std::uint64_t n) { return Rational(omega(n)); },
                                traits(true, true, TransformSupport::square_free()),
                                Oracle([](std::uint64_t d) { return Rational(is_prime(d) ? 1 : 0); }));
  if (name == "mu2") {
    static const ArithFn one = make_builtin("one");
    return ArithFn::from_values("mu2", [](std::uint64_t n) { return Rational(is_squarefree(n) ? 1 : 0); },
                                traits(false, true, TransformSupport::unknown()),
                                Oracle([](std::uint64_t d) { return squarefree_multiply_transform(one, d); }));
  }
  if (name == "phi")
    return ArithFn::from_values("phi", [](std::uint64_t n) { return from_u64(totient(n)); },
                                traits(false, false, TransformSupport::unknown()), Oracle(phi_transform));
  if (name == "sigma_over_id")
    return ArithFn::from_values("sigma_over_id", sigma_over_id_value,
                                traits(false, true, TransformSupport::unknown()),
                                Oracle([](std::uint64_t d) { return make_rational(Integer(1), to_integer(d)); }));
  if (name == "etd_counterexample")
    return ArithFn::from_transform(
        "etd_counterexample",
        [](std::uint64_t d) { return d == 1 ? Rational(1) : inverse_log_dyadic(d); },
        traits(false, true, TransformSupport::unknown()));
  std::string list;
  for (const auto& n : builtin_names()) list += (list.empty() ? "" : ", ") + n;
  throw CatalogError("unknown function '" + std::string(name) + "'; available: " + list);
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"zero", "one", "id", "omega", "mu2", "phi", "sigma_over_id", "etd_counterexample"};
}

ArithFn builtin(std::string_view name) { return make_builtin(name); }

ArithFn from_table(std::span<const TableEntry> entries, std::uint64_t bound, bool as_transform,
                   std::string name) {
  std::map<std::uint64_t, Rational> values;
  std::uint64_t max_n = 0;
  for (const auto& e : entries) {
    if (e.n == 0) throw TableError("table entry n must be positive");
    if (bound != 0 && e.n > bound)
      throw TableError("table entry n = " + std::to_string(e.n) + " exceeds bound " + std::to_string(bound));
    if (!values.emplace(e.n, e.value).second)
      throw TableError("duplicate table entry n = " + std::to_string(e.n));
    max_n = std::max(max_n, e.n);
  }
  if (bound == 0) bound = std::max<std::uint64_t>(max_n, 1);
  auto shared = std::make_shared<const std::map<std::uint64_t, Rational>>(std::move(values));
  auto lookup = [shared](std::uint64_t n) {
    auto it = shared->find(n);
    return it == shared->end() ? Rational(0) : it->second;
  };
  if (as_transform) {
    std::vector<std::uint64_t> support;
    bool squarefree = true;
    for (const auto& [n, v] : *shared) {
      if (sgn(v) == 0) continue;
      support.push_back(n);
      squarefree = squarefree && is_squarefree(n);
    }
    return ArithFn::from_transform(std::move(name), lookup,
                                   traits(squarefree, true, TransformSupport::finite_set(std::move(support))));
  }
  return ArithFn::from_values(std::move(name), lookup, traits(false, false, TransformSupport::unknown()),
                              std::nullopt, bound);
}

ArithFn from_table(const TableFile& table, std::string name) {
  return from_table(table.entries, table.bound, table.as_transform, std::move(name));
}

TableFile parse_table(std::istream& in) {
  TableFile out;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw TableError("table line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first[0] == '@') {
      if (first == "@as_transform") {
        out.as_transform = true;
      } else if (first == "@bound") {
        std::string n;
        if (!(ss >> n)) fail("@bound needs a value");
        Rational b;
        try {
          b = parse_rational(n);
        } catch (const std::invalid_argument&) {
          fail("malformed @bound '" + n + "'");
        }
        if (b.get_den() != 1 || b < 1 || !b.get_num().fits_ulong_p()) fail("@bound must be a positive integer");
        out.bound = b.get_num().get_ui();
      } else {
        fail("unknown directive " + first);
      }
      std::string extra;
      if (ss >> extra) fail("trailing text after directive");
      continue;
    }
    std::string value, extra;
    if (!(ss >> value)) fail("expected 'n value'");
    if (ss >> extra) fail("trailing text after value");
    Rational n;
    try {
      n = parse_rational(first);
    } catch (const std::invalid_argument&) {
      fail("malformed index '" + first + "'");
    }
    if (n.get_den() != 1 || n < 1 || !n.get_num().fits_ulong_p()) fail("index must be a positive integer");
    try {
      out.entries.push_back({n.get_num().get_ui(), parse_rational(value)});
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  for (const auto& e : out.entries)
    if (out.bound != 0 && e.n > out.bound)
      throw TableError("table entry n = " + std::to_string(e.n) + " exceeds bound " + std::to_string(out.bound));
  std::set<std::uint64_t> seen;
  for (const auto& e : out.entries)
    if (!seen.insert(e.n).second) throw TableError("duplicate table entry n = " + std::to_string(e.n));
  return out;
}

TableFile load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableError("cannot open table file '" + path + "'");
  return parse_table(in);
}

ArithFn mu2_times_id_over_phi(const ArithFn& F) {
  auto weighted = ArithFn::from_values(
      F.name() + "*id/phi",
      [F](std::uint64_t n) -> Rational { return F(n) * make_rational(to_integer(n), to_integer(totient(n))); },
      traits(false, false, TransformSupport::unknown()));
  return ArithFn::from_values(
      "mu2*" + F.name() + "*id/phi",
      [weighted](std::uint64_t n) { return is_squarefree(n) ? weighted(n) : Rational(0); },
      traits(false, F.traits().is_nsl, TransformSupport::unknown()),
      Oracle([weighted](std::uint64_t d) { return squarefree_multiply_transform(weighted, d); }));
}

namespace {

Rational random_small_rational(std::mt19937_64& rng) {
  std::int64_t num = static_cast<std::int64_t>(rng() % 19) - 9;
  if (num == 0) num = 1;
  std::int64_t den = static_cast<std::int64_t>(rng() % 9) + 1;
  return make_rational(num, den);
}

}  // namespace

ArithFn random_transform_table(std::uint64_t seed, std::uint64_t support_max, std::size_t support_size) {
  std::vector<std::uint64_t> candidates;
  for (std::uint64_t n = 2; n <= support_max; ++n) candidates.push_back(n);
  return random_transform_table(seed, std::move(candidates), support_size);
}

ArithFn random_transform_table(std::uint64_t seed, std::vector<std::uint64_t> candidates,
                               std::size_t support_size) {
  std::mt19937_64 rng(seed);
  candidates.erase(std::remove(candidates.begin(), candidates.end(), std::uint64_t(1)), candidates.end());
  std::vector<TableEntry> entries{{1, random_small_rational(rng)}};
  for (std::size_t i = 0; i + 1 < support_size && !candidates.empty(); ++i) {
    std::size_t k = rng() % candidates.size();
    entries.push_back({candidates[k], random_small_rational(rng)});
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return from_table(entries, 0, true, "random#" + std::to_string(seed));
}

ArithFn random_value_table(std::uint64_t seed, std::uint64_t bound) {
  std::mt19937_64 rng(seed);
  std::vector<TableEntry> entries;
  for (std::uint64_t n = 1; n <= bound; ++n) entries.push_back({n, random_small_rational(rng)});
  return from_table(entries, bound, false, "random-values#" + std::to_string(seed));
}

}  // namespace ramsmooth
