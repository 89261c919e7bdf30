#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "output.hpp"
#include "ramsmooth/decomp.hpp"
#include "ramsmooth/funclib.hpp"
#include "ramsmooth/parallel.hpp"
#include "ramsmooth/ramanujan.hpp"
#include "ramsmooth/transforms.hpp"
#include "suites.hpp"

using namespace ramsmooth;
using namespace ramsmooth::cli;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range {
  std::int64_t lo;
  std::int64_t hi;
};

std::int64_t parse_int(const std::string& s, const std::string& flag) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw UsageError(flag + ": not an integer: '" + s + "'");
  return v;
}

// "A..B" or "A"
Range parse_range(const std::string& text, const std::string& flag, bool allow_nonpositive = false) {
  Range r;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    r = {parse_int(text.substr(0, dots), flag), parse_int(text.substr(dots + 2), flag)};
  } else {
    r.lo = r.hi = parse_int(text, flag);
  }
  if (r.lo > r.hi) throw UsageError(flag + ": empty range " + text);
  if (!allow_nonpositive && r.lo < 1) throw UsageError(flag + ": range must start at 1 or above");
  return r;
}

struct Config {
  std::string fn;
  std::string table;
  std::optional<std::uint64_t> prime;
  std::string q = "1..10";
  std::string a;
  std::string d;
  std::uint64_t cutoff = kDefaultCutoff;
  std::string primes;
  std::string format = "json";
  std::string out;
  std::optional<double> tolerance;
  std::uint64_t seed = 1;
  std::optional<int> approx;
  std::string kind = "wintner";
  std::string suite;
};

Format parse_format(const std::string& f) {
  if (f == "json") return Format::Json;
  if (f == "csv") return Format::Csv;
  if (f == "text") return Format::Text;
  throw UsageError("--format: expected json, csv or text");
}

ArithFn load_function(const Config& c) {
  if (!c.table.empty()) return from_table(load_table(c.table), std::filesystem::path(c.table).filename().string());
  if (c.fn.empty()) throw UsageError("one of --fn or --table is required");
  return builtin(c.fn);
}

SmoothContext require_prime(const Config& c) {
  if (!c.prime) throw UsageError("--prime is required for this command");
  if (!is_prime(*c.prime)) throw UsageError("--prime: " + std::to_string(*c.prime) + " is not prime");
  return SmoothContext(*c.prime);
}

std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto p = parse_int(item, "--primes");
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw UsageError("--primes: " + item + " is not prime");
    if (!out.empty() && static_cast<std::uint64_t>(p) <= out.back()) throw UsageError("--primes must be ascending");
    out.push_back(static_cast<std::uint64_t>(p));
  }
  if (out.empty()) throw UsageError("--primes: empty list");
  return out;
}

void add_approx_columns(Table& t, std::optional<int> approx, const std::vector<std::string>& base) {
  t.columns = base;
  if (approx) t.columns.push_back("approx");
}

std::string approx_cell(const SeriesValue& v, int k) { return v.decimal(k); }

Json range_json(const Range& r) { return Json::array({r.lo, r.hi}); }

// c_q(a) on a grid, with all three formulas compared per cell.
int cmd_csum(const Config& c, Emission& e) {
  Range q = parse_range(c.q, "--q");
  Range a = parse_range(c.a.empty() ? "1..10" : c.a, "--a", true);
  e.table.columns = {"q", "a", "value"};
  Json cells = Json::array();
  std::uint64_t disagreements = 0;
  for (std::int64_t qi = q.lo; qi <= q.hi; ++qi)
    for (std::int64_t ai = a.lo; ai <= a.hi; ++ai) {
      auto qq = static_cast<std::uint64_t>(qi);
      std::int64_t h = csum_holder(qq, ai);
      bool agree = csum_definition(qq, ai) == h && csum_kluyver(qq, ai) == h && ramanujan_sum(qq, ai) == h;
      if (!agree) ++disagreements;
      cells.push_back(Json{{"q", qi}, {"a", ai}, {"value", h}, {"agree", agree}});
      e.table.rows.push_back({std::to_string(qi), std::to_string(ai), std::to_string(h)});
    }
  e.document = Json{{"command", "csum"}, {"q", range_json(q)}, {"a", range_json(a)},
                    {"disagreements", disagreements}, {"cells", cells}};
  return disagreements == 0 ? 0 : kExitFailure;
}

int cmd_coeffs(const Config& c, Emission& e) {
  auto kind = parse_kind(c.kind);
  if (!kind) throw UsageError("--kind: expected wintner, carmichael, p-wintner, p-carmichael or pflat-wintner");
  std::optional<SmoothContext> ctx;
  if (kind_needs_prime(*kind)) ctx = require_prime(c);
  ArithFn F = load_function(c);
  Range q = parse_range(c.q, "--q");
  CoefficientTable table = build_coefficient_table(F, *kind, ctx, static_cast<std::uint64_t>(q.lo),
                                                   static_cast<std::uint64_t>(q.hi), c.cutoff);
  add_approx_columns(e.table, c.approx,
                     {"q", "value", "exact", "complete", "cutoff", "trace_cutoffs", "trace_values"});
  Json entries = Json::array();
  for (const auto& entry : table.entries) {
    Json j{{"q", entry.q}};
    j.update(truncated_json(entry.value, c.approx));
    entries.push_back(j);
    std::vector<std::string> row = {std::to_string(entry.q), entry.value.value.str(),
                                    entry.value.value.is_exact() ? "1" : "0", entry.value.complete ? "1" : "0",
                                    std::to_string(entry.value.cutoff), cutoffs_field(entry.value.trace),
                                    values_field(entry.value.trace)};
    if (c.approx) row.push_back(approx_cell(entry.value.value, *c.approx));
    e.table.rows.push_back(std::move(row));
  }
  e.document = Json{{"command", "coeffs"}, {"function", F.name()}, {"kind", kind_name(*kind)}};
  e.document["P"] = ctx ? Json(ctx->P()) : Json(nullptr);
  e.document["cutoff"] = c.cutoff;
  e.document["entries"] = entries;
  return 0;
}

Json verdict_json(const Verdict& v) {
  Json j{{"verdict", verdict_name(v.kind)}};
  j["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  j["note"] = v.note;
  return j;
}

bool residual_ok(const SeriesValue& r, const std::optional<double>& tol) {
  if (r.is_exact() && r.is_zero()) return true;
  if (!tol) return false;
  return r.magnitude() <= *tol;
}

int cmd_wod(const Config& c, Emission& e) {
  SmoothContext ctx = require_prime(c);
  ArithFn F = load_function(c);
  if (!c.a.empty() && !c.d.empty()) throw UsageError("--a and --d are mutually exclusive");
  bool ok = true;
  e.document = Json{{"command", "wod"}, {"function", F.name()}, {"P", ctx.P()}, {"cutoff", c.cutoff}};
  if (c.tolerance) e.document["tolerance"] = *c.tolerance;
  if (!c.d.empty()) {
    Range d = parse_range(c.d, "--d");
    add_approx_columns(e.table, c.approx, {"d", "lhs", "regular", "irregular", "residual", "exact"});
    std::vector<FPrimeDecomposition> rows(static_cast<std::size_t>(d.hi - d.lo + 1));
    parallel_for(rows.size(), [&](std::size_t i) { rows[i] = wod_fprime(F, ctx, d.lo + i, c.cutoff); });
    Json jr = Json::array();
    for (const auto& r : rows) {
      ok = ok && residual_ok(r.residual, c.tolerance);
      jr.push_back(Json{{"d", r.d},
                        {"lhs", rational_json(r.lhs, c.approx)},
                        {"regular", series_json(r.regular, c.approx)},
                        {"irregular", series_json(r.irregular, c.approx)},
                        {"residual", series_json(r.residual, c.approx)}});
      std::vector<std::string> row = {std::to_string(r.d), to_string(r.lhs), r.regular.str(), r.irregular.str(),
                                      r.residual.str(), r.residual.is_exact() ? "1" : "0"};
      if (c.approx) row.push_back(approx_cell(r.residual, *c.approx));
      e.table.rows.push_back(std::move(row));
    }
    e.document["mode"] = "transform";
    e.document["rows"] = jr;
  } else {
    Range a = parse_range(c.a.empty() ? "1..10" : c.a, "--a");
    std::vector<std::uint64_t> args;
    for (std::int64_t v = a.lo; v <= a.hi; ++v) args.push_back(static_cast<std::uint64_t>(v));
    DecompositionReport report = decomposition_report(F, ctx, args, c.cutoff);
    add_approx_columns(e.table, c.approx,
                       {"a", "in_scope", "value", "smooth", "irregular", "reconstruction", "residual", "exact", "note"});
    Json jr = Json::array();
    for (const auto& r : report.rows) {
      if (!r.in_scope) {
        jr.push_back(Json{{"a", r.a}, {"in_scope", false}, {"note", r.note}});
        std::vector<std::string> row = {std::to_string(r.a), "0", "", "", "", "", "", "", r.note};
        if (c.approx) row.push_back("");
        e.table.rows.push_back(std::move(row));
        continue;
      }
      ok = ok && residual_ok(r.residual, c.tolerance);
      jr.push_back(Json{{"a", r.a},
                        {"in_scope", true},
                        {"value", rational_json(r.value, c.approx)},
                        {"smooth", series_json(r.smooth_part, c.approx)},
                        {"irregular", series_json(r.irregular_part, c.approx)},
                        {"reconstruction", series_json(r.reconstruction, c.approx)},
                        {"residual", series_json(r.residual, c.approx)}});
      std::vector<std::string> row = {std::to_string(r.a),         "1", to_string(r.value), r.smooth_part.str(),
                                      r.irregular_part.str(),      r.reconstruction.str(), r.residual.str(),
                                      r.residual.is_exact() ? "1" : "0", ""};
      if (c.approx) row.push_back(approx_cell(r.residual, *c.approx));
      e.table.rows.push_back(std::move(row));
    }
    e.document["mode"] = "values";
    e.document["rows"] = jr;
    e.document["reef"] = verdict_json(report.reef.reef);
    e.document["weak_reef"] = verdict_json(report.reef.weak_reef);
    Json w{{"determined", report.wintner.determined}};
    w["prime"] = report.wintner.prime ? Json(*report.wintner.prime) : Json(nullptr);
    w["range"] = report.wintner.range ? Json(*report.wintner.range) : Json(nullptr);
    w["note"] = report.wintner.note;
    e.document["wintner"] = w;
  }
  e.document["ok"] = ok;
  return ok ? 0 : kExitFailure;
}

int cmd_verify(const Config& c, Emission& e) {
  if (!is_suite(c.suite)) {
    std::string names;
    for (const auto& n : suite_names()) names += (names.empty() ? "" : ", ") + n;
    throw UsageError("unknown suite '" + c.suite + "'; available: " + names);
  }
  SuiteOptions options;
  options.seed = c.seed;
  if (!c.primes.empty()) options.primes = parse_primes(c.primes);
  auto results = run_suite(c.suite, options);
  e.table.columns = {"suite", "property", "checked", "failed", "status", "first_failure"};
  Json props = Json::array();
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed();
    props.push_back(Json{{"property", r.property},
                         {"checked", r.checked},
                         {"failed", r.failed},
                         {"status", r.passed() ? "pass" : "fail"},
                         {"first_failure", r.first_failure}});
    e.table.rows.push_back({c.suite, r.property, std::to_string(r.checked), std::to_string(r.failed),
                            r.passed() ? "pass" : "fail", r.first_failure});
  }
  e.document = Json{{"command", "verify"}, {"suite", c.suite}, {"seed", c.seed}, {"status", ok ? "pass" : "fail"},
                    {"properties", props}};
  return ok ? 0 : kExitFailure;
}

void add_function_options(CLI::App* sub, Config& c) {
  auto* fn = sub->add_option("--fn", c.fn, "built-in function name");
  auto* table = sub->add_option("--table", c.table, "function table file");
  fn->excludes(table);
}

void add_output_options(CLI::App* sub, Config& c) {
  sub->add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--out", c.out, "write output to this file");
  sub->add_option("--approx", c.approx, "add a decimal rendering with K digits")->check(CLI::Range(1, 1000));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramanujan smooth expansions: exact coefficients, decompositions and verification suites"};
  app.require_subcommand(1);
  Config c;

  auto* csum = app.add_subcommand("csum", "Ramanujan sums c_q(a) with cross-checked formulas");
  csum->add_option("--q", c.q, "modulus range A..B");
  csum->add_option("--a", c.a, "argument range A..B (may be negative: --a=-5..5)");
  add_output_options(csum, c);

  auto* coeffs = app.add_subcommand("coeffs", "coefficient tables");
  add_function_options(coeffs, c);
  coeffs->add_option("--kind", c.kind, "wintner, carmichael, p-wintner, p-carmichael, pflat-wintner");
  coeffs->add_option("--prime", c.prime, "P for the P-kinds");
  coeffs->add_option("--q", c.q, "modulus range A..B");
  coeffs->add_option("--cutoff", c.cutoff, "truncation x")->check(CLI::PositiveNumber);
  add_output_options(coeffs, c);

  auto* wod = app.add_subcommand("wod", "Wintner orthogonal decomposition report");
  add_function_options(wod, c);
  wod->add_option("--prime", c.prime, "P");
  wod->add_option("--a", c.a, "argument range A..B (decomposition of F)");
  wod->add_option("--d", c.d, "range A..B (decomposition of F')");
  wod->add_option("--cutoff", c.cutoff, "truncation x")->check(CLI::PositiveNumber);
  wod->add_option("--tolerance", c.tolerance, "accept truncated residuals up to T");
  add_output_options(wod, c);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", c.suite, "csum, orthogonality, local-expansion, wod, null-function, inertia, lemmas, appendix")
      ->required();
  verify->add_option("--seed", c.seed, "seed for random tables");
  verify->add_option("--primes", c.primes, "override the suite's prime list, e.g. 2,3,5");
  add_output_options(verify, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Emission emission;
  int code = 0;
  try {
    Format format = parse_format(c.format);
    if (csum->parsed())
      code = cmd_csum(c, emission);
    else if (coeffs->parsed())
      code = cmd_coeffs(c, emission);
    else if (wod->parsed())
      code = cmd_wod(c, emission);
    else
      code = cmd_verify(c, emission);
    if (c.out.empty()) {
      emit(emission, format, std::cout);
    } else {
      std::ofstream file(c.out);
      if (!file) throw UsageError("--out: cannot open " + c.out);
      emit(emission, format, file);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return code;
}
