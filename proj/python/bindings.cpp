#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polydisc/cli_io.hpp"
#include "polydisc/dilation.hpp"
#include "polydisc/operator_core.hpp"
#include "polydisc/vn_variety.hpp"

namespace py = pybind11;
using namespace polydisc;

PYBIND11_MODULE(_polydisc, m) {
  m.doc() = "isometric dilations and von Neumann inequalities on the polydisc";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NotInClass>(m, "NotInClass", PyExc_ValueError);
  py::register_exception<NotSzegoPositive>(m, "NotSzegoPositive",
                                           PyExc_ArithmeticError);

  py::class_<ToleranceConfig>(m, "ToleranceConfig")
      .def(py::init<>())
      .def_readwrite("eps_contraction", &ToleranceConfig::eps_contraction)
      .def_readwrite("eps_commute", &ToleranceConfig::eps_commute)
      .def_readwrite("eps_psd", &ToleranceConfig::eps_psd)
      .def_readwrite("eps_rank", &ToleranceConfig::eps_rank)
      .def_readwrite("eps_unitary", &ToleranceConfig::eps_unitary)
      .def_readwrite("eps_residual", &ToleranceConfig::eps_residual)
      .def_readwrite("rho_pure", &ToleranceConfig::rho_pure);

  py::class_<OperatorTuple>(m, "OperatorTuple")
      .def(py::init<std::vector<Matrix>>())
      .def_property_readonly("n", &OperatorTuple::n)
      .def_property_readonly("dim", &OperatorTuple::dim)
      .def_readonly("ops", &OperatorTuple::ops);

  py::class_<ClassReport>(m, "ClassReport")
      .def_readonly("is_contractive", &ClassReport::is_contractive)
      .def_readonly("is_commuting", &ClassReport::is_commuting)
      .def_readonly("max_norm", &ClassReport::max_norm)
      .def_readonly("max_commutator", &ClassReport::max_commutator)
      .def_readonly("pure_flags", &ClassReport::pure_flags)
      .def_readonly("szego_min_eig", &ClassReport::szego_min_eig)
      .def_readonly("in_class", &ClassReport::in_class);

  py::class_<Polynomial>(m, "Polynomial")
      .def(py::init([](int vars,
                       std::vector<std::pair<std::vector<int>, Complex>> terms) {
             Polynomial p;
             p.vars = vars;
             p.terms = std::move(terms);
             return p;
           }),
           py::arg("vars"), py::arg("terms"))
      .def("eval", &Polynomial::eval)
      .def("degree", &Polynomial::degree)
      .def("lipschitz", &Polynomial::lipschitz);

  py::class_<DilationReport>(m, "DilationReport")
      .def_readonly("coordinate_residuals", &DilationReport::coordinate_residuals)
      .def_readonly("isometry_residual", &DilationReport::isometry_residual)
      .def_readonly("symbol_form_residual", &DilationReport::symbol_form_residual)
      .def("max_coordinate_residual", &DilationReport::max_coordinate_residual);

  py::class_<DilationPackage>(m, "DilationPackage")
      .def_readonly("p", &DilationPackage::p)
      .def_readonly("q", &DilationPackage::q);

  py::class_<VNReport>(m, "VNReport")
      .def_readonly("op_norm", &VNReport::op_norm)
      .def_readonly("torus_sup", &VNReport::torus_sup)
      .def_readonly("slack", &VNReport::slack)
      .def_readonly("has_variety", &VNReport::has_variety)
      .def_readonly("variety_sup", &VNReport::variety_sup)
      .def_readonly("classical_ok", &VNReport::classical_ok)
      .def_readonly("refined_ok", &VNReport::refined_ok)
      .def_readonly("notice", &VNReport::notice);

  m.def("szego_defect", &szego_defect);
  m.def("class_membership", &class_membership, py::arg("tuple"), py::arg("p"),
        py::arg("q"), py::arg("tol") = ToleranceConfig{});
  m.def("defect_identity_check", &defect_identity_check, py::arg("tuple"),
        py::arg("p"), py::arg("q"), py::arg("tol") = ToleranceConfig{});
  m.def(
      "build_finite_rank_dilation",
      [](const OperatorTuple& t, int p, int q, const ToleranceConfig& tol,
         int cutoff) { return build_finite_rank_dilation(t, p, q, tol, cutoff); },
      py::arg("tuple"), py::arg("p"), py::arg("q"),
      py::arg("tol") = ToleranceConfig{}, py::arg("cutoff") = 8);
  m.def(
      "build_general_dilation",
      [](const OperatorTuple& t, int p, int q, const ToleranceConfig& tol,
         int cutoff) { return build_general_dilation(t, p, q, tol, cutoff); },
      py::arg("tuple"), py::arg("p"), py::arg("q"),
      py::arg("tol") = ToleranceConfig{}, py::arg("cutoff") = 8);
  m.def("verify_dilation", &verify_dilation, py::arg("package"), py::arg("tuple"),
        py::arg("cutoff") = 8, py::arg("tol") = ToleranceConfig{});
  m.def("compress_coordinate", &compress_coordinate, py::arg("package"),
        py::arg("i"), py::arg("cutoff") = 8);
  m.def("eval_poly_tuple", &eval_poly_tuple);
  m.def("torus_sup", &torus_sup);
  m.def("vn_report", &vn_report, py::arg("tuple"), py::arg("p"), py::arg("q"),
        py::arg("polys"), py::arg("grid") = 64, py::arg("refined") = false,
        py::arg("tol") = ToleranceConfig{});
  m.def("gen_diagonal", &gen_diagonal, py::arg("n"), py::arg("dim"),
        py::arg("rho_max"), py::arg("seed"));
  m.def("gen_model_compression", &gen_model_compression, py::arg("n"),
        py::arg("p"), py::arg("q"), py::arg("e_dim"), py::arg("N"),
        py::arg("seed"));
  m.def("haar_unitary", &haar_unitary);
}
