#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "logkdv/error.hpp"
#include "logkdv/linevolve.hpp"
#include "logkdv/modal.hpp"
#include "logkdv/nonlin.hpp"
#include "logkdv/numgrid.hpp"
#include "logkdv/spectrum.hpp"
#include "logkdv/xcli.hpp"

namespace py = pybind11;
using namespace logkdv;

namespace {

using darray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vec(const darray& a) {
  if (a.ndim() != 1) throw InvalidArgument("expected a 1-D array");
  return std::vector<double>(a.data(), a.data() + a.size());
}

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

Branch parse_branch(const std::string& s) {
  if (s == "plus") return Branch::plus;
  if (s == "minus") return Branch::minus;
  throw InvalidArgument("branch must be 'plus' or 'minus'");
}

linevolve::InitialKind parse_kind(const std::string& s) {
  if (s == "odd") return linevolve::InitialKind::odd;
  if (s == "even") return linevolve::InitialKind::even;
  if (s == "gaussian") return linevolve::InitialKind::gaussian;
  if (s == "kernel") return linevolve::InitialKind::kernel;
  throw InvalidArgument("kind must be odd, even, gaussian or kernel");
}

Field periodic_field(const darray& u, double L) {
  auto v = to_vec(u);
  const int n = static_cast<int>(v.size());
  return Field(Grid::periodic(L, n), std::move(v));
}

// JSON <-> Python through the string form; configs are small.
py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}
nlohmann::json py_to_json(const py::object& o) {
  return nlohmann::json::parse(py::str(py::module_::import("json").attr("dumps")(o)).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_logkdv, m) {
  m.doc() = "logkdv core bindings";
  m.attr("__version__") = "0.1.0";

  static py::exception<Error> base_exc(m, "LogkdvError", PyExc_RuntimeError);
  static py::exception<ConfigError> config_exc(m, "ConfigError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      py::set_error(config_exc, e.what());
    } catch (const Error& e) {
      py::set_error(base_exc, e.what());
    }
  });

  m.def("periodic_points", [](double L, int n) {
    const auto g = Grid::periodic(L, n);
    return to_array(std::vector<double>(g->points().begin(), g->points().end()));
  }, py::arg("L"), py::arg("n"));

  // spectrum
  py::class_<EigenMode>(m, "EigenMode")
      .def_property_readonly("branch", [](const EigenMode& e) { return e.branch == Branch::plus ? "plus" : "minus"; })
      .def_readonly("n", &EigenMode::n)
      .def_readonly("E", &EigenMode::E)
      .def_readonly("omega", &EigenMode::omega)
      .def_property_readonly("k", [](const EigenMode& e) {
        return to_array(std::vector<double>(e.uhat.grid->points().begin(), e.uhat.grid->points().end()));
      })
      .def_property_readonly("uhat", [](const EigenMode& e) { return to_array(e.uhat.values); })
      .def_property_readonly("vhat", [](const EigenMode& e) { return to_array(e.vhat.values); })
      .def("physical", [](EigenMode& e, const darray& x) { return to_array(spectrum::mode_to_physical(e, to_vec(x))); },
           py::arg("x"))
      .def("nodal_count", [](const EigenMode& e) { return spectrum::nodal_count(e); })
      .def("__repr__", [](const EigenMode& e) {
        return "<EigenMode n=" + std::to_string(e.n) + " E=" + std::to_string(e.E) + ">";
      });

  m.def("solve_half_line", [](double k_max, int n_k, int n_modes, const std::string& branch) {
    return spectrum::solve_half_line(k_max, n_k, n_modes, parse_branch(branch));
  }, py::arg("k_max") = 12.0, py::arg("n_k") = 4000, py::arg("n_modes") = 3, py::arg("branch") = "plus");
  m.def("frobenius_u1", &spectrum::frobenius_u1, py::arg("E"), py::arg("k"), py::arg("n_terms") = 3);
  m.def("fit_decay_exponent", [](const darray& x, py::array_t<cplx> samples, double lo, double hi,
                                 const std::string& part) {
    std::vector<cplx> s(samples.data(), samples.data() + samples.size());
    const auto fit = spectrum::fit_decay_exponent(to_vec(x), s, {lo, hi},
                                                  part == "imag" ? spectrum::Part::imag : spectrum::Part::real);
    return py::make_tuple(fit.p, fit.super_algebraic);
  }, py::arg("x"), py::arg("samples"), py::arg("x_lo"), py::arg("x_hi"), py::arg("part") = "real");

  // linevolve
  m.def("initial_data", [](const std::string& kind, double alpha, double L, int n) {
    return to_array(linevolve::make_initial_data(parse_kind(kind), alpha, Grid::periodic(L, n)).values);
  }, py::arg("kind"), py::arg("alpha") = 0.0, py::arg("L") = 40.0, py::arg("n") = 4096);
  m.def("diagnostics", [](const darray& u, double L) {
    const Field f = periodic_field(u, L);
    const auto r = linevolve::diagnostics(f, numgrid::build_schrodinger_L(*f.grid));
    return py::dict(py::arg("l2") = r.l2, py::arg("ec") = r.ec, py::arg("xbar") = r.xbar,
                    py::arg("sigma") = r.sigma);
  }, py::arg("u"), py::arg("L") = 40.0);
  m.def("evolve_linear", [](const darray& u0, double L, double dt, double t_final, int record_every) {
    const Field f = periodic_field(u0, L);
    linevolve::Trajectory tr;
    {
      py::gil_scoped_release release;
      tr = linevolve::evolve_linear(f, dt, t_final, record_every, std::vector<double>{t_final});
    }
    std::vector<double> t, l2, ec, xbar, sigma;
    for (const auto& r : tr.records) {
      t.push_back(r.t);
      l2.push_back(r.l2);
      ec.push_back(r.ec);
      xbar.push_back(r.xbar);
      sigma.push_back(r.sigma);
    }
    return py::dict(py::arg("t") = to_array(t), py::arg("l2") = to_array(l2), py::arg("ec") = to_array(ec),
                    py::arg("xbar") = to_array(xbar), py::arg("sigma") = to_array(sigma),
                    py::arg("final") = to_array(tr.snapshots.back().values),
                    py::arg("max_ec_step_drift") = tr.max_ec_step_drift, py::arg("warnings") = tr.warnings);
  }, py::arg("u0"), py::arg("L") = 40.0, py::arg("dt") = 1e-3, py::arg("t_final") = 1.0,
     py::arg("record_every") = 10);

  // modal
  m.def("project", [](const darray& u0, double L, double k_max, int n_k, int n_modes) {
    const Field f = periodic_field(u0, L);
    const auto modes = spectrum::solve_half_line(k_max, n_k, n_modes + 1);
    const auto c = modal::project(f, modes);
    return py::dict(py::arg("b") = c.b, py::arg("a0") = c.a0, py::arg("a0_formula") = c.a0_formula,
                    py::arg("zero_even") = c.zero_even, py::arg("a_plus") = to_array(c.a_plus),
                    py::arg("a_minus") = to_array(c.a_minus));
  }, py::arg("u0"), py::arg("L") = 40.0, py::arg("k_max") = 12.0, py::arg("n_k") = 4000,
     py::arg("n_modes") = 20);

  // nonlin
  m.def("f_eps", [](double v, double eps, int m_) { return nonlin::f_eps(v, {eps, m_}); },
        py::arg("v"), py::arg("eps"), py::arg("m") = 2);
  m.def("W_eps", [](double v, double eps, int m_) { return nonlin::W_eps(v, {eps, m_}); },
        py::arg("v"), py::arg("eps"), py::arg("m") = 2);
  m.def("W_log", &nonlin::W_log, py::arg("v"));
  m.def("soliton", [](double c, double a, double L, int n) {
    return to_array(nonlin::soliton(c, a, Grid::periodic(L, n)).values);
  }, py::arg("c") = 0.0, py::arg("a") = 0.0, py::arg("L") = 40.0, py::arg("n") = 2048);
  m.def("functionals", [](const darray& v, double L, std::optional<double> eps, int m_) {
    std::optional<nonlin::RegularizedNonlinearity> reg;
    if (eps) reg = nonlin::RegularizedNonlinearity(*eps, m_);
    const auto r = nonlin::functionals(periodic_field(v, L), reg);
    return py::dict(py::arg("P") = r.P, py::arg("E_eps") = r.E_eps, py::arg("E_log") = r.E_log,
                    py::arg("h1") = r.h1);
  }, py::arg("v"), py::arg("L") = 40.0, py::arg("eps") = py::none(), py::arg("m") = 2);
  m.def("evolve_nonlinear", [](const darray& v0, double L, double eps, int m_, double dt, double t_final,
                               int record_every) {
    const Field f = periodic_field(v0, L);
    nonlin::NonlinearTrajectory tr;
    {
      py::gil_scoped_release release;
      tr = nonlin::evolve_nonlinear(f, {eps, m_}, dt, t_final, record_every, std::vector<double>{t_final});
    }
    std::vector<double> t, P, E;
    for (const auto& r : tr.records) {
      t.push_back(r.t);
      P.push_back(r.P);
      E.push_back(r.E_eps);
    }
    return py::dict(py::arg("t") = to_array(t), py::arg("P") = to_array(P), py::arg("E_eps") = to_array(E),
                    py::arg("final") = to_array(tr.snapshots.back().values), py::arg("warnings") = tr.warnings);
  }, py::arg("v0"), py::arg("L") = 40.0, py::arg("eps") = 1e-3, py::arg("m") = 2, py::arg("dt") = 1e-4,
     py::arg("t_final") = 0.1, py::arg("record_every") = 100);

  // xcli
  m.def("defaults", [](const std::string& command) {
    return json_to_py(xcli::to_json(xcli::defaults(xcli::command_from_string(command))));
  }, py::arg("command"));
  m.def("validate", [](const py::object& cfg) { xcli::validate(xcli::from_json(py_to_json(cfg))); },
        py::arg("config"));
  m.def("run", [](const py::object& cfg) {
    const auto c = xcli::from_json(py_to_json(cfg));
    xcli::RunResult r;
    {
      py::gil_scoped_release release;
      r = xcli::run(c);
    }
    return py::dict(py::arg("status") = r.status, py::arg("files") = r.files,
                    py::arg("warnings") = r.warnings, py::arg("error") = r.error);
  }, py::arg("config"));
}
