#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dyadic_bellman/bellman.hpp"
#include "dyadic_bellman/extremal.hpp"
#include "dyadic_bellman/harness.hpp"
#include "dyadic_bellman/tree.hpp"

namespace py = pybind11;
namespace db = dyadic_bellman;

namespace {

db::StepFunction step(unsigned m, unsigned depth, std::vector<double> values) {
  return db::StepFunction(db::MAdicTree(m, depth), std::move(values));
}

std::vector<double> to_list(const db::StepFunction& phi) {
  return {phi.values().begin(), phi.values().end()};
}

py::dict bound_dict(const db::BoundReport& r) {
  py::dict d;
  d["upper"] = r.upper_bound;
  d["k"] = r.k;
  d["on_surface"] = r.on_surface;
  d["exact"] = r.exact_value ? py::cast(*r.exact_value) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bellman function of the tree maximal operator";

  static py::exception<db::Error> error(m, "Error", PyExc_ValueError);
  static py::exception<db::SurfaceError> surface(m, "SurfaceError", error.ptr());
  static py::exception<db::CapacityError> capacity(m, "CapacityError", error.ptr());
  static py::exception<db::RepresentationError> representation(m, "RepresentationError",
                                                               error.ptr());
  static py::exception<db::DivergenceError> divergence(m, "DivergenceError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const db::SurfaceError& e) {
      surface(e.what());
    } catch (const db::CapacityError& e) {
      capacity(e.what());
    } catch (const db::RepresentationError& e) {
      representation(e.what());
    } catch (const db::DivergenceError& e) {
      divergence(e.what());
    } catch (const db::Error& e) {
      error(e.what());
    }
  });

  m.def("hp", &db::hp, py::arg("p"), py::arg("z"));
  m.def("omega", &db::omega, py::arg("p"), py::arg("tau"));
  m.def("extremal_z", &db::extremal_z, py::arg("q"), py::arg("alpha"), py::arg("tau"));
  m.def("two_var_bellman", &db::two_var_bellman, py::arg("p"), py::arg("f"), py::arg("F"));
  m.def(
      "critical_f",
      [](double p, double q, double f, double A) {
        return db::critical_f(db::Exponents::make(p, q), f, A);
      },
      py::arg("p"), py::arg("q"), py::arg("f"), py::arg("A"));
  m.def(
      "bellman_on_surface",
      [](double p, double q, double f, double A) {
        return db::bellman_on_surface(db::Exponents::make(p, q), f, A);
      },
      py::arg("p"), py::arg("q"), py::arg("f"), py::arg("A"));
  m.def(
      "h_inv",
      [](double p, double q, double y) { return db::h_inv(db::Exponents::make(p, q), y); },
      py::arg("p"), py::arg("q"), py::arg("y"));
  m.def(
      "upper_bound",
      [](double p, double q, double f, double A, double F) {
        return bound_dict(db::upper_bound(db::Exponents::make(p, q), db::ConstraintTriple{f, A, F}));
      },
      py::arg("p"), py::arg("q"), py::arg("f"), py::arg("A"), py::arg("F"),
      "F h^{-1}(k)^p with k and the exact value when on the surface.");

  m.def(
      "maximal_operator",
      [](unsigned branching, unsigned depth, std::vector<double> values) {
        return to_list(db::maximal_operator(step(branching, depth, std::move(values))));
      },
      py::arg("m"), py::arg("depth"), py::arg("values"));
  m.def(
      "integrate",
      [](unsigned branching, unsigned depth, std::vector<double> values, double r) {
        return db::integrate(step(branching, depth, std::move(values)), r);
      },
      py::arg("m"), py::arg("depth"), py::arg("values"), py::arg("r") = 1.0);

  m.def(
      "extremal_lower_bound",
      [](double p, double q, double f, double A, const std::string& alpha, unsigned base) {
        const auto params = db::ExtremalParams::from_surface(db::Exponents::make(p, q), f, A,
                                                             db::MAdicRational::parse(alpha, base));
        return db::analytic_norms(params, std::nullopt).lower_bound;
      },
      py::arg("p"), py::arg("q"), py::arg("f"), py::arg("A"), py::arg("alpha"),
      py::arg("m") = 2, "z^p F(alpha), the full-series lower bound.");

  m.def(
      "run_suite",
      [](const std::string& suite, std::uint64_t seed, unsigned trials, unsigned max_depth) {
        db::SuiteConfig cfg;
        cfg.seed = seed;
        cfg.trials = trials;
        cfg.max_depth = max_depth;
        const db::SuiteReport r = db::run_suite(suite, cfg);
        py::dict d;
        d["suite"] = r.suite;
        d["checks"] = r.checks;
        d["violations"] = r.violations;
        d["worst_slack"] = r.worst_slack;
        d["passed"] = r.passed();
        return d;
      },
      py::arg("suite"), py::arg("seed") = 0, py::arg("trials") = 1000, py::arg("max_depth") = 10);
}
