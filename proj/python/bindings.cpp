#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "maass/annihilator.hpp"
#include "maass/bump_spectral.hpp"
#include "maass/config.hpp"
#include "maass/core_geometry.hpp"

namespace py = pybind11;
using namespace maass;

namespace {

SpectralParameter param(const std::vector<cplx>& v) { return SpectralParameter(v, 1e-9); }

std::string bound_json(const std::string& text, bool laplacian) {
  const RunConfig c = parse_config(text);
  const BoundReport r = laplacian ? theorem_laplacian_bound(c.data, c.resolved_p(), c.resolved_delta(), c.bound_options())
                                  : theorem_main_bound(c.data, c.S, c.resolved_p(), c.resolved_delta(), c.bound_options());
  return report_json(r, c);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "GL(n) quasi-Maass forms and approximate-converse bounds";

  auto base = py::register_exception<Error>(m, "MaassError", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<HypothesisViolation>(m, "HypothesisViolation", base.ptr());
  py::register_exception<NumericalFailure>(m, "NumericalFailure", base.ptr());
  py::register_exception<Unsupported>(m, "Unsupported", base.ptr());

  m.def("version", &toolkit_version);
  m.def("natural_symbol", [](long long p, const std::vector<cplx>& a, const std::vector<cplx>& b) {
    return natural_symbol(p, param(a), param(b));
  }, py::arg("p"), py::arg("ell_inf"), py::arg("ell_p"));
  m.def("natural_norm_bound", &natural_norm_bound, py::arg("n"), py::arg("p"));
  m.def("laplace_eigenvalue", [](const std::vector<cplx>& e) { return laplace_eigenvalue(param(e)); });
  m.def("casimir_eigenvalue", [](int j, const std::vector<cplx>& e) { return casimir_eigenvalue(j, param(e)); });
  m.def("max_delta", [](const std::vector<cplx>& e) { return max_delta(param(e)); });
  m.def("c_delta", &c_delta, py::arg("n"), py::arg("delta"));
  m.def("vol_ball", &vol_ball, py::arg("n"), py::arg("delta"));
  m.def("verify_annihilation", [](int n, long long p, int trials, std::uint64_t seed) {
    const auto r = verify_annihilation(n, p, trials, seed);
    py::dict d;
    d["passed"] = r.passed;
    d["max_abs"] = r.max_abs;
    d["max_abs_exact"] = r.max_abs_exact;
    d["max_eisenstein"] = r.max_eisenstein;
    d["trials"] = r.trials;
    return d;
  }, py::arg("n"), py::arg("p") = 2, py::arg("trials") = 100, py::arg("seed") = 1);

  m.def("canonical_config", [](const std::string& t) { return emit_config(parse_config(t)); });
  m.def("config_hash", [](const std::string& t) { return config_hash(parse_config(t)); });
  m.def("bound_json", [](const std::string& t) { return bound_json(t, false); },
        py::call_guard<py::gil_scoped_release>());
  m.def("laplacian_bound_json", [](const std::string& t) { return bound_json(t, true); },
        py::call_guard<py::gil_scoped_release>());
  m.def("distance", [](const std::string& t) {
    const RunConfig c = parse_config(t);
    if (!c.other) throw InvalidInput("distance: config needs 'other_places'");
    return distance_dS(c.data, *c.other, c.S);
  });
}
