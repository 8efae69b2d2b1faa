#include "fpopt/errors.hpp"
#include "fpopt/optimal_construction.hpp"
#include "fpopt/problem_file.hpp"
#include "fpopt/propagator_analysis.hpp"
#include "fpopt/reference_problems.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fpopt;

namespace {

void bind_kernel(py::module_& m) {
  m.def("expm", &expm, py::arg("a"), py::arg("t"), "exp(-a t)");
  m.def("spectral_norm", &spectral_norm);
  m.def("sym_eigen", [](const Matrix& a) {
    SymEigen e = sym_eigen(a);
    return py::make_tuple(e.values, e.vectors);
  });
  m.def("general_eigenvalues", &general_eigenvalues);
  m.def("solve_continuous_lyapunov", &solve_continuous_lyapunov, py::arg("c"), py::arg("d"),
        "Solve C Q + Q C^T = 2 D.");
  m.def("kalman_rank", &kalman_rank, py::arg("c"), py::arg("d"));
}

void bind_pairs(py::module_& m) {
  py::class_<Covariance>(m, "Covariance")
      .def(py::init<const Matrix&>(), py::arg("k"))
      .def_static("diagonal", &Covariance::diagonal)
      .def_static("from_eigen", &Covariance::from_eigen, py::arg("values"), py::arg("vectors"))
      .def_property_readonly("dim", &Covariance::dim)
      .def_property_readonly("matrix", &Covariance::matrix)
      .def_property_readonly("inverse", &Covariance::inverse)
      .def_property_readonly("sqrt", &Covariance::sqrt)
      .def_property_readonly("inv_sqrt", &Covariance::inv_sqrt)
      .def_property_readonly("eigenvalues", &Covariance::eigenvalues)
      .def_property_readonly("condition_number", &Covariance::condition_number)
      .def_property_readonly("lambda_opt", &Covariance::lambda_opt);

  py::class_<CoefficientPair>(m, "CoefficientPair")
      .def(py::init<Matrix, Matrix>(), py::arg("C"), py::arg("D"))
      .def_readwrite("C", &CoefficientPair::C)
      .def_readwrite("D", &CoefficientPair::D);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("lyapunov_residual", &ValidationReport::lyapunov_residual)
      .def_readonly("lyapunov_relative", &ValidationReport::lyapunov_relative)
      .def_readonly("trace_D", &ValidationReport::trace_D)
      .def_readonly("min_eig_D", &ValidationReport::min_eig_D)
      .def_readonly("rank_D", &ValidationReport::rank_D)
      .def_readonly("spectral_gap", &ValidationReport::spectral_gap)
      .def_readonly("admissible", &ValidationReport::admissible)
      .def_readonly("positive_stable", &ValidationReport::positive_stable)
      .def_readonly("hypoelliptic", &ValidationReport::hypoelliptic)
      .def_readonly("steady_state_unique", &ValidationReport::steady_state_unique)
      .def_property_readonly("all_passed", &ValidationReport::all_passed);

  m.def("make_pair_from_J", &make_pair_from_J, py::arg("k"), py::arg("d"), py::arg("j"));
  m.def("symmetric_pair", &symmetric_pair);
  m.def("validate_pair", &validate_pair, py::arg("k"), py::arg("pair"));
  m.def("spectral_gap", &spectral_gap);
  m.def("drift_tilde", &drift_tilde, py::arg("k"), py::arg("c"));
  m.def("gm_envelope", &gm_envelope, py::arg("k"), py::arg("c_tilde"), py::arg("t"));
}

void bind_construction(py::module_& m) {
  py::enum_<Variant>(m, "Variant")
      .value("standard", Variant::Standard)
      .value("transpose", Variant::Transpose);

  py::class_<OptimalCertificate>(m, "OptimalCertificate")
      .def_readonly("pair", &OptimalCertificate::pair)
      .def_property_readonly("J", [](const OptimalCertificate& c) { return c.tilde.J; })
      .def_property_readonly("C_tilde", [](const OptimalCertificate& c) { return c.tilde.C_tilde; })
      .def_property_readonly("D_tilde", [](const OptimalCertificate& c) { return c.tilde.D_tilde; })
      .def_property_readonly("J_tilde", [](const OptimalCertificate& c) { return c.tilde.J_tilde; })
      .def_readonly("J_hat", &OptimalCertificate::J_hat)
      .def_readonly("v", &OptimalCertificate::v)
      .def_property_readonly("Psi", [](const OptimalCertificate& c) { return c.basis.Psi; })
      .def_readonly("lambdas", &OptimalCertificate::lambdas)
      .def_readonly("Q", &OptimalCertificate::Q)
      .def_readonly("P", &OptimalCertificate::P)
      .def_readonly("c", &OptimalCertificate::c)
      .def_readonly("constant", &OptimalCertificate::constant)
      .def_readonly("lambda_opt", &OptimalCertificate::lambda_opt)
      .def_readonly("variant", &OptimalCertificate::variant)
      .def_readonly("isotropic", &OptimalCertificate::isotropic)
      .def_property_readonly("lyapunov_residual", &lyapunov_certificate_residual);

  m.def("equidistribute_basis", [](const Matrix& d_tilde) {
    EquidistributingBasis b = equidistribute_basis(d_tilde);
    return py::make_tuple(b.Psi, b.target);
  });
  m.def("default_schedule", [](int d, double c) { return default_schedule(d, c).values(); });
  m.def("gm_schedule", [](int d) { return gm_schedule(d).values(); });
  m.def(
      "construct_optimal",
      [](const Covariance& k, double c, Variant v) { return construct_optimal(k, c, v); },
      py::arg("k"), py::arg("c"), py::arg("variant") = Variant::Standard);
  m.def(
      "construct_optimal_with_lambdas",
      [](const Covariance& k, std::vector<double> lambdas, Variant v) {
        return construct_optimal(k, LambdaSchedule(std::move(lambdas)), v);
      },
      py::arg("k"), py::arg("lambdas"), py::arg("variant") = Variant::Standard);
  m.def("frobenius_bound", [](const Covariance& k, double c) {
    FrobeniusBound b = frobenius_bound(k, c);
    return py::make_tuple(b.drift, b.diffusion);
  });
  m.def("growth_study", [](double c, const std::vector<int>& dims) {
    py::list rows;
    for (const auto& r : growth_study(c, dims)) rows.append(py::make_tuple(r.d, r.actual, r.bound));
    return rows;
  });
  m.def("certificate_json", [](const OptimalCertificate& cert, const Covariance& k) {
    return io::certificate_to_json(cert, k).dump(2);
  });
}

void bind_propagators(py::module_& m) {
  py::class_<Schedule>(m, "Schedule")
      .def(py::init<Covariance, std::vector<double>, std::vector<CoefficientPair>>(), py::arg("k"),
           py::arg("starts"), py::arg("pairs"))
      .def_static("constant", &Schedule::constant, py::arg("k"), py::arg("pair"))
      .def_static("split", &Schedule::split, py::arg("k"), py::arg("initial"), py::arg("t0"),
                  py::arg("final"))
      .def_property_readonly("starts", &Schedule::starts)
      .def_property_readonly("asymptotic_rate", &Schedule::asymptotic_rate);

  py::class_<NormCurve>(m, "NormCurve")
      .def_readonly("t", &NormCurve::t)
      .def_readonly("values", &NormCurve::values)
      .def_readonly("rate", &NormCurve::rate)
      .def_readonly("sharp_constant", &NormCurve::sharp_constant)
      .def_readonly("grid_constant", &NormCurve::grid_constant);

  m.def("ode_propagator", &ode_propagator, py::arg("schedule"), py::arg("t1"), py::arg("t2"));
  m.def("norm_curve", &norm_curve, py::arg("schedule"), py::arg("t_max"), py::arg("samples"),
        py::arg("rate") = py::none());
  m.def("sharp_constant", &sharp_constant, py::arg("schedule"), py::arg("rate"),
        py::arg("t_max") = py::none());
  m.def("best_constant_2d", &best_constant_2d, py::arg("k"), py::arg("pair"));
  m.def("initial_decay_rate", &initial_decay_rate, py::arg("k"), py::arg("pair"));
  m.def("max_initial_decay", [](const Covariance& k) {
    InitialDecayOptimum o = max_initial_decay(k);
    return py::make_tuple(o.rate, o.pair);
  });
  m.def("tangency_time", &tangency_time, py::arg("k"), py::arg("pair"), py::arg("rate"));
  m.def(
      "compare_schedules",
      [](const std::vector<std::pair<std::string, Schedule>>& entries, double rate) {
        std::vector<NamedSchedule> named;
        for (const auto& [id, s] : entries) named.push_back({id, s});
        py::list rows;
        for (const auto& r : compare_schedules(named, rate)) {
          rows.append(py::make_tuple(r.id, r.sharp_constant, r.max_frobenius));
        }
        return rows;
      },
      py::arg("schedules"), py::arg("rate"));

  auto ref = m.def_submodule("reference", "2D benchmark pairs and split schedules");
  ref.def("covariance", [] { return reference::anisotropic_covariance(); });
  ref.def("rotation_pair", [](double mu) { return reference::rotation_pair(mu); });
  ref.def("split_case_schedule", [](int which, double t0) {
    return reference::split_case_schedule(which, t0);
  });
}

}  // namespace

PYBIND11_MODULE(_fpopt, m) {
  m.doc() = "Optimal non-symmetric Fokker-Planck coefficients and propagator-norm analysis";
  m.attr("__version__") = "1.0.0";

  static py::exception<Error> error(m, "FpoptError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  bind_kernel(m);
  bind_pairs(m);
  bind_construction(m);
  bind_propagators(m);
}
