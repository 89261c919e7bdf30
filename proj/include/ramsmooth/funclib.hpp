#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ramsmooth/arithfn.hpp"

namespace ramsmooth {

class CatalogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// zero, one, id, omega, mu2, phi, sigma_over_id, etd_counterexample
std::vector<std::string> builtin_names();
ArithFn builtin(std::string_view name);

struct TableEntry {
  std::uint64_t n;
  Rational value;
};

// as_transform: the entries are F' (zero elsewhere, no domain limit); otherwise they are
// F on [1, bound], zero at unlisted n.
ArithFn from_table(std::span<const TableEntry> entries, std::uint64_t bound, bool as_transform,
                   std::string name = "table");

struct TableFile {
  std::vector<TableEntry> entries;
  std::uint64_t bound = 0;
  bool as_transform = false;
};

TableFile parse_table(std::istream& in);
TableFile load_table(const std::string& path);
ArithFn from_table(const TableFile& table, std::string name = "table");

// a -> mu^2(a) F(a) a / phi(a); its transform comes from the square-free formula.
ArithFn mu2_times_id_over_phi(const ArithFn& F);

// Random finite-support transform table with small rational values, nonzero at 1.
ArithFn random_transform_table(std::uint64_t seed, std::uint64_t support_max, std::size_t support_size);
// Same, with the support drawn from the given candidates.
ArithFn random_transform_table(std::uint64_t seed, std::vector<std::uint64_t> candidates,
                               std::size_t support_size);
// Random value table on [1, bound].
ArithFn random_value_table(std::uint64_t seed, std::uint64_t bound);

}  // namespace ramsmooth
