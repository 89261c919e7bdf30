#include <algorithm>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ramsmooth/decomp.hpp"
#include "ramsmooth/expansions.hpp"
#include "ramsmooth/funclib.hpp"
#include "ramsmooth/ramanujan.hpp"
#include "ramsmooth/transforms.hpp"

namespace py = pybind11;
using namespace ramsmooth;

namespace {

py::object fraction(const Rational& r) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(py::int_(py::str(r.get_num().get_str())), py::int_(py::str(r.get_den().get_str())));
}

Rational from_python(const py::handle& v) {
  if (py::isinstance<py::int_>(v)) return parse_rational(py::str(v).cast<std::string>());
  py::object f = py::module_::import("fractions").attr("Fraction")(v);
  return parse_rational(py::str(f.attr("numerator")).cast<std::string>() + "/" +
                        py::str(f.attr("denominator")).cast<std::string>());
}

// Fraction when exact, float otherwise.
py::object series(const SeriesValue& v) {
  if (v.is_exact()) return fraction(v.exact());
  return py::float_(v.approx());
}

py::dict truncated(const Truncated& t) {
  py::dict d;
  d["value"] = series(t.value);
  d["exact"] = t.value.is_exact();
  d["complete"] = t.complete;
  d["cutoff"] = t.cutoff;
  py::list cutoffs, values;
  for (const auto& p : t.trace.points) {
    cutoffs.append(p.cutoff);
    values.append(series(p.value));
  }
  d["trace_cutoffs"] = cutoffs;
  d["trace_values"] = values;
  return d;
}

ArithFn table_from_dict(const py::dict& entries, std::uint64_t bound, bool as_transform) {
  std::vector<TableEntry> rows;
  for (auto [k, v] : entries) rows.push_back({k.cast<std::uint64_t>(), from_python(v)});
  std::sort(rows.begin(), rows.end(), [](const TableEntry& a, const TableEntry& b) { return a.n < b.n; });
  return from_table(rows, bound, as_transform);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Ramanujan sums, Wintner coefficients and smooth expansions";

  py::register_exception<ScopeError>(m, "ScopeError", PyExc_ValueError);

  m.def("csum", &ramanujan_sum, py::arg("q"), py::arg("a"));
  m.def("csum_definition", &csum_definition, py::arg("q"), py::arg("a"));
  m.def("csum_holder", &csum_holder, py::arg("q"), py::arg("a"));
  m.def("csum_kluyver", &csum_kluyver, py::arg("q"), py::arg("a"));
  m.def("csum_nonvanishing", &csum_nonvanishing, py::arg("q"), py::arg("a"));
  m.def("mobius", py::overload_cast<std::uint64_t>(&mobius));
  m.def("totient", py::overload_cast<std::uint64_t>(&totient));
  m.def("kernel", &kernel);
  m.def("divisors", py::overload_cast<std::uint64_t>(&divisors));
  m.def("enumerate_smooth", [](std::uint64_t P, std::uint64_t x) { return enumerate_smooth(SmoothContext(P), x); },
        py::arg("P"), py::arg("x"));
  m.def("rvl_moduli", [](std::uint64_t a, std::uint64_t P) { return rvl_moduli(a, SmoothContext(P)); },
        py::arg("a"), py::arg("P"));

  py::class_<ArithFn>(m, "ArithFn")
      .def_property_readonly("name", &ArithFn::name)
      .def_property_readonly("is_ipp", [](const ArithFn& F) { return F.traits().is_ipp; })
      .def_property_readonly("is_nsl", [](const ArithFn& F) { return F.traits().is_nsl; })
      .def("__call__", [](const ArithFn& F, std::uint64_t n) { return fraction(F(n)); })
      .def("transform", [](const ArithFn& F, std::uint64_t d) { return fraction(F.transform(d)); })
      .def("__repr__", [](const ArithFn& F) { return "<ArithFn " + F.name() + ">"; });

  m.def("builtin_names", &builtin_names);
  m.def("builtin", [](const std::string& name) { return builtin(name); }, py::arg("name"));
  m.def("from_table", &table_from_dict, py::arg("entries"), py::arg("bound") = 0, py::arg("as_transform") = true,
        "Table {n: value}; values may be int, Fraction or 'p/q' strings.");
  m.def("load_table", [](const std::string& path) { return from_table(load_table(path)); }, py::arg("path"));

  m.def("wintner", [](const ArithFn& F, std::uint64_t q, std::uint64_t x) { return truncated(wintner_coefficient(F, q, x)); },
        py::arg("F"), py::arg("q"), py::arg("x") = kDefaultCutoff);
  m.def("p_wintner",
        [](const ArithFn& F, std::uint64_t P, std::uint64_t q, std::uint64_t x) {
          return truncated(p_wintner_coefficient(F, SmoothContext(P), q, x));
        },
        py::arg("F"), py::arg("P"), py::arg("q"), py::arg("x") = kDefaultCutoff);
  m.def("carmichael",
        [](const ArithFn& F, std::uint64_t q, std::uint64_t x) { return truncated(carmichael_coefficient(F, q, x)); },
        py::arg("F"), py::arg("q"), py::arg("x") = kDefaultCutoff);
  m.def("local_expansion_flat",
        [](const ArithFn& F, std::uint64_t P, std::uint64_t a) { return fraction(local_expansion_flat(F, SmoothContext(P), a)); },
        py::arg("F"), py::arg("P"), py::arg("a"));
  m.def("local_expansion_smooth",
        [](const ArithFn& F, std::uint64_t P, std::uint64_t a, std::uint64_t x) {
          return series(local_expansion_smooth(F, SmoothContext(P), a, x));
        },
        py::arg("F"), py::arg("P"), py::arg("a"), py::arg("x") = kDefaultCutoff);
  m.def("null_expansion",
        [](std::uint64_t a, std::uint64_t P) {
          NullExpansion n = null_function_smooth_expansion(a, SmoothContext(P));
          return py::make_tuple(py::int_(py::str(n.signed_sum.get_str())), py::int_(py::str(n.absolute_sum.get_str())));
        },
        py::arg("a"), py::arg("P"));
  m.def("wod",
        [](const ArithFn& F, std::uint64_t P, std::uint64_t a, std::uint64_t x) {
          DecompositionRow r = wod_f(F, SmoothContext(P), a, x);
          py::dict d;
          d["value"] = fraction(r.value);
          d["smooth"] = series(r.smooth_part);
          d["irregular"] = series(r.irregular_part);
          d["residual"] = series(r.residual);
          return d;
        },
        py::arg("F"), py::arg("P"), py::arg("a"), py::arg("x") = kDefaultCutoff);
  m.def("irregular_series",
        [](const ArithFn& F, std::uint64_t P, std::uint64_t d, std::uint64_t x) {
          return truncated(irregular_series(F, SmoothContext(P), d, x).series);
        },
        py::arg("F"), py::arg("P"), py::arg("d"), py::arg("x") = kDefaultCutoff);
}
