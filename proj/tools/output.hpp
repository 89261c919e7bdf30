#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ramsmooth/numeric.hpp"

namespace ramsmooth::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Text };

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Emission {
  Json document;  // full report, json format
  Table table;    // flat rows, csv and text formats
};

void emit(const Emission& e, Format format, std::ostream& out);

std::string csv_field(const std::string& s);

// Rationals are always strings; `approx` adds a k-digit decimal.
Json rational_json(const Rational& r, std::optional<int> approx);
Json series_json(const SeriesValue& v, std::optional<int> approx);
Json trace_json(const Trace& t);
Json truncated_json(const Truncated& t, std::optional<int> approx);

std::string cutoffs_field(const Trace& t);
std::string values_field(const Trace& t);

}  // namespace ramsmooth::cli
