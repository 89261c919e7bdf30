#include "output.hpp"

#include <algorithm>

namespace ramsmooth::cli {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const Emission& e, Format format, std::ostream& out) {
  const Table& t = e.table;
  switch (format) {
    case Format::Json:
      out << e.document.dump(2) << "\n";
      return;
    case Format::Csv:
      for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_field(t.columns[i]);
      out << "\n";
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << "\n";
      }
      return;
    case Format::Text: {
      std::vector<std::size_t> width(t.columns.size());
      for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
      for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
      auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (i) s += "  ";
          s += cells[i];
          if (i + 1 < cells.size()) s.append(width[i] - cells[i].size(), ' ');
        }
        out << s << "\n";
      };
      line(t.columns);
      for (const auto& row : t.rows) line(row);
      return;
    }
  }
}

Json rational_json(const Rational& r, std::optional<int> approx) {
  if (!approx) return to_string(r);
  return Json{{"value", to_string(r)}, {"approx", to_decimal(r, *approx)}};
}

Json series_json(const SeriesValue& v, std::optional<int> approx) {
  Json j{{"value", v.str()}, {"exact", v.is_exact()}};
  if (approx) j["approx"] = v.decimal(*approx);
  return j;
}

Json trace_json(const Trace& t) {
  Json cutoffs = Json::array(), values = Json::array();
  for (const auto& p : t.points) {
    cutoffs.push_back(p.cutoff);
    values.push_back(p.value.str());
  }
  return Json{{"cutoffs", cutoffs}, {"values", values}, {"settling", t.settling()}};
}

Json truncated_json(const Truncated& t, std::optional<int> approx) {
  Json j = series_json(t.value, approx);
  j["cutoff"] = t.cutoff;
  j["complete"] = t.complete;
  j["settled"] = t.settled();
  j["trace"] = trace_json(t.trace);
  return j;
}

std::string cutoffs_field(const Trace& t) {
  std::string s;
  for (const auto& p : t.points) s += (s.empty() ? "" : ";") + std::to_string(p.cutoff);
  return s;
}

std::string values_field(const Trace& t) {
  std::string s;
  bool first = true;
  for (const auto& p : t.points) {
    s += (first ? "" : ";") + p.value.str();
    first = false;
  }
  return s;
}

}  // namespace ramsmooth::cli
