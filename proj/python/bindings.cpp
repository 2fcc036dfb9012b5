#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "finegrad/asymptotics.hpp"
#include "finegrad/census.hpp"
#include "finegrad/cycle_index.hpp"
#include "finegrad/golden.hpp"
#include "finegrad/orbit_count.hpp"

namespace py = pybind11;
using namespace finegrad;

namespace {

py::object to_python(const BigInt& value)
{
  const std::string digits = value.str();
  return py::reinterpret_steal<py::object>(PyLong_FromString(digits.c_str(), nullptr, 10));
}

py::object to_python(const std::optional<BigInt>& value)
{
  return value ? to_python(*value) : py::none();
}

OrbitCounter& default_counter()
{
  static OrbitCounter counter;
  return counter;
}

OrbitCounter& counter_or_default(OrbitCounter* orbits)
{
  return orbits ? *orbits : default_counter();
}

py::dict row_dict(const GradingCountRow& row)
{
  py::dict d;
  d["series"] = std::string(1, series_letter(row.series));
  d["index"] = row.index;
  d["type_I"] = to_python(row.type_one);
  d["type_II"] = to_python(row.type_two);
  d["total"] = to_python(row.total);
  d["provenance"] = row.provenance == Provenance::built_in ? "built-in" : "needs-import";
  return d;
}

const char* status_name(VerifyCell::Status status)
{
  switch (status) {
  case VerifyCell::Status::pass:
    return "pass";
  case VerifyCell::Status::fail:
    return "fail";
  case VerifyCell::Status::skipped:
    break;
  }
  return "skipped";
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Counts of fine gradings on matrix and classical Lie algebras";

  py::register_exception<MissingCycleIndex>(m, "MissingCycleIndex", PyExc_LookupError);
  py::register_exception<CycleIndexFormatError>(m, "CycleIndexFormatError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_ArithmeticError);

  m.def("version", [] { return std::string(FINEGRAD_VERSION); });

  py::class_<OrbitCounter>(m, "OrbitCounter")
      .def(py::init<>())
      .def("import_file", &OrbitCounter::import_file, py::arg("path"))
      .def("set_cache_dir", &OrbitCounter::set_cache_dir, py::arg("path"))
      .def(
          "available",
          [](const OrbitCounter& o, unsigned mm, const std::string& action) {
            return o.available(mm, parse_action(action));
          },
          py::arg("m"), py::arg("action"))
      .def(
          "count",
          [](OrbitCounter& o, unsigned mm, const std::string& action, std::uint32_t q) {
            return to_python(o.count(mm, parse_action(action), q));
          },
          py::arg("m"), py::arg("action"), py::arg("q"))
      .def(
          "table",
          [](OrbitCounter& o, unsigned mm, const std::string& action, std::uint32_t q_max) {
            py::list out;
            for (const auto& value : o.table(mm, parse_action(action), q_max))
              out.append(to_python(value));
            return out;
          },
          py::arg("m"), py::arg("action"), py::arg("q_max"))
      .def("imports", [](const OrbitCounter& o) {
        py::list out;
        for (const auto& record : o.imports()) {
          py::dict d;
          d["path"] = record.source;
          d["action"] = std::string(action_tag(record.action));
          d["m"] = record.m;
          out.append(d);
        }
        return out;
      });

  m.def(
      "n_matrix",
      [](std::uint64_t n, std::uint32_t characteristic) {
        return to_python(n_matrix(n, FieldSpec(characteristic)));
      },
      py::arg("n"), py::arg("char") = 0);

  m.def(
      "count",
      [](const std::string& series, std::uint32_t index, std::uint32_t characteristic,
         OrbitCounter* orbits) {
        return row_dict(count_row(parse_series(series), index, FieldSpec(characteristic),
                                  counter_or_default(orbits)));
      },
      py::arg("series"), py::arg("index"), py::arg("char") = 0, py::arg("orbits") = nullptr);

  m.def("constants", [] {
    const auto& k = finegrad::constants();
    py::dict d;
    d["z0"] = k.z0;
    d["x0"] = k.x0;
    d["y0"] = k.y0;
    d["b0"] = k.b0;
    d["x1"] = k.x1;
    d["b1"] = k.b1;
    d["a0"] = k.a0;
    for (std::uint32_t c : {2u, 3u, 5u, 7u, 11u, 13u})
      d[py::str("a_" + std::to_string(c))] = k.a_c(c);
    return d;
  });

  m.def(
      "verify",
      [](const std::string& scope, OrbitCounter* orbits) {
        py::list out;
        for (const auto& cell : verify_golden(parse_scope(scope), counter_or_default(orbits))) {
          py::dict d;
          d["label"] = cell.label;
          d["status"] = status_name(cell.status);
          d["expected"] = cell.expected;
          d["computed"] = cell.computed;
          d["note"] = cell.note;
          out.append(d);
        }
        return out;
      },
      py::arg("scope") = "all", py::arg("orbits") = nullptr);

  m.def(
      "export_cycle_index",
      [](const std::string& action, unsigned mm) {
        return export_cycle_index(compute_cycle_index(parse_action(action), mm));
      },
      py::arg("action"), py::arg("m"));
}
