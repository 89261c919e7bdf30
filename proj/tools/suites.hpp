#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ramsmooth::cli {

struct PropertyResult {
  std::string property;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::string first_failure;

  bool passed() const { return failed == 0 && checked > 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::optional<std::vector<std::uint64_t>> primes;  // overrides each suite's default P list
};

std::vector<std::string> suite_names();
bool is_suite(const std::string& name);
std::vector<PropertyResult> run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace ramsmooth::cli
