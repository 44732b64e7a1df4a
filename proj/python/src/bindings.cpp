#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eulerchi/appendix.hpp"
#include "eulerchi/chi.hpp"
#include "eulerchi/errors.hpp"
#include "eulerchi/eulerian.hpp"
#include "eulerchi/monodromy.hpp"
#include "eulerchi/report.hpp"
#include "eulerchi/selftest.hpp"

namespace py = pybind11;

// mpz_class <-> Python int through decimal strings.
namespace pybind11::detail {
template <>
struct type_caster<mpz_class> {
  PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    object text = reinterpret_steal<object>(PyObject_Str(src.ptr()));
    if (!text) {
      PyErr_Clear();
      return false;
    }
    value = mpz_class(text.cast<std::string>());
    return true;
  }

  static handle cast(const mpz_class& x, return_value_policy, handle) {
    return PyLong_FromString(x.get_str().c_str(), nullptr, 10);
  }
};
}  // namespace pybind11::detail

using namespace eulerchi;

namespace {

py::object json_to_py(const Json& j) {
  py::object loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

Json py_to_json(const py::object& obj) {
  py::object dumps = py::module_::import("json").attr("dumps");
  return Json::parse(dumps(obj).cast<std::string>());
}

std::vector<long> degrees(int r, const std::optional<std::vector<long>>& d) {
  return d ? *d : std::vector<long>(r, 1);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Eulerian numbers, Euler characteristics and the wedge-power search";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<IntegralityError>(m, "IntegralityError", PyExc_ArithmeticError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  m.def("eulerian", &eulerian, py::arg("n"), py::arg("k"));
  m.def("eulerian_row", [](long n) { return eulerian_row(n); }, py::arg("n"));
  m.def("generalized_eulerian", &generalized_eulerian, py::arg("r"), py::arg("n"), py::arg("k"));
  m.def("generalized_eulerian_row", [](int r, long n) { return generalized_eulerian_row(r, n); }, py::arg("r"),
        py::arg("n"));
  m.def("generalized_eulerian_via_sum", &generalized_eulerian_via_sum, py::arg("r"), py::arg("n"), py::arg("k"));
  m.def("brute_force_generalized", [](int r, long n, long k) { return brute_force_generalized(r, n, k); },
        py::arg("r"), py::arg("n"), py::arg("k"));

  m.def(
      "chi_same_class",
      [](int r, long n, std::optional<std::vector<long>> d, const mpz_class& h) {
        return chi_same_class(DegreeProfile{r, n, degrees(r, d), h}).values();
      },
      py::arg("r"), py::arg("n"), py::arg("d") = py::none(), py::arg("h") = mpz_class(1));
  m.def(
      "chi_from_profile",
      [](const py::object& profile) { return chi_from_profile(profile_from_json(py_to_json(profile))).values(); },
      py::arg("profile"));
  m.def(
      "chi_via_recurrence",
      [](const py::object& profile) { return chi_via_recurrence(profile_from_json(py_to_json(profile))).values(); },
      py::arg("profile"));
  m.def(
      "induced_profile",
      [](int r, long n, std::optional<std::vector<long>> d, const mpz_class& h) {
        return json_to_py(to_json(DegreeProfile{r, n, degrees(r, d), h}.induced_profile()));
      },
      py::arg("r"), py::arg("n"), py::arg("d") = py::none(), py::arg("h") = mpz_class(1));
  m.def(
      "numerical_condition",
      [](std::vector<mpz_class> values) { return numerical_condition(ChiSequence::from_values(std::move(values))); },
      py::arg("values"));

  m.def(
      "lhs_value",
      [](const std::string& m_H, long k, long target_sum) {
        return lhs_value(IndexFunction::parse(m_H), k, target_sum);
      },
      py::arg("m_H"), py::arg("k"), py::arg("target_sum"));
  m.def(
      "plant",
      [](const std::string& m_H, long k) {
        auto p = plant_instance(IndexFunction::parse(m_H), k);
        return py::make_tuple(p.system.target.values(), p.planted.s);
      },
      py::arg("m_H"), py::arg("k"));
  m.def(
      "search",
      [](std::vector<mpz_class> target, long max_m, const std::string& mode, long budget_ms, int threads) {
        SystemInstance sys{ChiSequence::from_values(std::move(target)), parse_search_mode(mode)};
        SearchReport report = [&] {
          py::gil_scoped_release release;
          return search(sys, {max_m, 0, std::chrono::milliseconds(budget_ms)}, {threads, nullptr});
        }();
        return json_to_py(to_json(report));
      },
      py::arg("target"), py::arg("max_m") = 10, py::arg("mode") = "all_integers", py::arg("budget_ms") = 60000,
      py::arg("threads") = 1);

  m.def(
      "verify",
      [](std::vector<mpz_class> values, int r, long n) {
        SweepRequest req;
        const ChiSequence chi(n, r, std::move(values));
        Json out = Json::array();
        for (const auto& v : verify_all(chi, r, n, req, "values")) out.push_back(to_json(v));
        return json_to_py(out);
      },
      py::arg("values"), py::arg("r"), py::arg("n"));
  m.def(
      "sweep",
      [](std::vector<int> r_values, std::vector<long> n_values, bool thresholds, int threads) {
        SweepRequest req;
        req.r_values = std::move(r_values);
        req.n_values = std::move(n_values);
        req.thresholds = thresholds;
        std::vector<IneqVerdict> verdicts;
        {
          py::gil_scoped_release release;
          verdicts = sweep(req, threads);
        }
        Json out = Json::array();
        for (const auto& v : verdicts) out.push_back(to_json(v));
        return json_to_py(out);
      },
      py::arg("r_values"), py::arg("n_values") = std::vector<long>{}, py::arg("thresholds") = false,
      py::arg("threads") = 1);
  m.def("threshold_n", &threshold_n, py::arg("r"), py::arg("quartic") = false);
  m.def("m0_bound", [](int r, long n) { return json_to_py(to_json(m0_bound_arithmetic(r, n))); }, py::arg("r"),
        py::arg("n"));

  m.def(
      "selftest",
      [](std::uint64_t seed, const std::string& fault) {
        py::gil_scoped_release release;
        return run_selftest({seed, 1, fault}).passed();
      },
      py::arg("seed") = 0, py::arg("inject_fault") = "");
}
