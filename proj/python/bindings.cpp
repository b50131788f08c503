#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psido/config.hpp"
#include "psido/connes_higson.hpp"
#include "psido/experiments.hpp"
#include "psido/extension.hpp"
#include "psido/index.hpp"
#include "psido/inverse_ch.hpp"
#include "psido/numerics.hpp"
#include "psido/partition.hpp"
#include "psido/quantize.hpp"
#include "psido/symbols.hpp"

namespace py = pybind11;
using namespace psido;

namespace {

py::dict checks_dict(const std::vector<Check>& checks) {
  py::dict d;
  for (const auto& c : checks) d[py::str(c.name)] = py::make_tuple(c.pass, c.detail);
  return d;
}

// Result holders share one Python surface: .passed, .checks, .csv(), .json().
template <class R>
void bind_result(py::module_& m, const char* name) {
  py::class_<R>(m, name)
      .def_property_readonly("passed", [](const R& r) { return all_pass(r.checks); })
      .def_property_readonly("checks", [](const R& r) { return checks_dict(r.checks); })
      .def("csv", [](const R& r) { return to_csv(r); })
      .def("json", [](const R& r) { return to_json(r); });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudodifferential quantization on the circle: quantizers, defects, CH maps and index checks.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InconclusiveIndex>(m, "InconclusiveIndex", PyExc_RuntimeError);

  // ---- numerics
  py::class_<CircleGrid>(m, "CircleGrid")
      .def(py::init<int, int, int>(), py::arg("N"), py::arg("k") = 1, py::arg("J") = 0)
      .def_property_readonly("N", &CircleGrid::N)
      .def_property_readonly("k", &CircleGrid::k)
      .def_property_readonly("J", &CircleGrid::J)
      .def_property_readonly("dim", &CircleGrid::dim)
      .def("index", &CircleGrid::index, py::arg("n"), py::arg("b") = 0)
      .def("__repr__", [](const CircleGrid& g) {
        return "CircleGrid(N=" + std::to_string(g.N()) + ", k=" + std::to_string(g.k()) +
               ", J=" + std::to_string(g.J()) + ")";
      });

  py::class_<FourierOperator>(m, "FourierOperator")
      .def_property_readonly("grid", &FourierOperator::grid)
      .def_property_readonly("matrix", py::overload_cast<>(&FourierOperator::matrix, py::const_))
      .def("block", &FourierOperator::block)
      .def("adjoint", &FourierOperator::adjoint)
      .def("compress", &FourierOperator::compress)
      .def("apply", [](const FourierOperator& a, const Vector& v) -> Vector { return a * v; })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def("__rmul__", [](const FourierOperator& a, Complex z) { return z * a; });

  m.def("operator_norm", py::overload_cast<const FourierOperator&>(&operator_norm));
  m.def("singular_values", [](const FourierOperator& x) { return singular_values(x.matrix()); });
  m.def("compact_tail_norm", &compact_tail_norm, py::arg("x"), py::arg("K"));
  m.def("svd_kernel_dim", &svd_kernel_dim, py::arg("x"), py::arg("eps"));

  // ---- partition
  m.def("smooth_step", &smooth_step);
  py::class_<DyadicPartition>(m, "DyadicPartition")
      .def(py::init<double, int>(), py::arg("s"), py::arg("L"))
      .def_property_readonly("s", &DyadicPartition::s)
      .def_property_readonly("inverse_s", &DyadicPartition::inverse_s)
      .def_property_readonly("L", &DyadicPartition::L)
      .def("gamma", &DyadicPartition::gamma, py::arg("i"), py::arg("x"))
      .def("gamma_squared", &DyadicPartition::gamma_squared, py::arg("i"), py::arg("x"));

  // ---- symbols
  py::class_<TrigLoop>(m, "TrigLoop")
      .def_static("constant", &TrigLoop::constant)
      .def_static("identity", &TrigLoop::identity, py::arg("k") = 1)
      .def_static("monomial", &TrigLoop::monomial, py::arg("n"), py::arg("value"))
      .def_static("scalar_monomial", &TrigLoop::scalar_monomial, py::arg("n"), py::arg("value") = Complex(1.0),
                  py::arg("k") = 1)
      .def_static("from_coefficients", &TrigLoop::from_coefficients, py::arg("k"), py::arg("coefficients"))
      .def_property_readonly("k", &TrigLoop::k)
      .def_property_readonly("degree", &TrigLoop::degree)
      .def("coefficient", &TrigLoop::coefficient)
      .def("__call__", &TrigLoop::operator())
      .def("adjoint", &TrigLoop::adjoint)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self);

  py::enum_<SymbolClass>(m, "SymbolClass")
      .value("CompactSupport", SymbolClass::CompactSupport)
      .value("HomogeneousZero", SymbolClass::HomogeneousZero)
      .value("Vanishing00", SymbolClass::Vanishing00)
      .value("FullC0", SymbolClass::FullC0);

  py::class_<Profile>(m, "Profile")
      .def_static("one", &Profile::one)
      .def_static("positive_side", &Profile::positive_side)
      .def_static("negative_side", &Profile::negative_side)
      .def_static("bump", &Profile::bump, py::arg("radius"))
      .def_static("step", &Profile::step, py::arg("lo"), py::arg("hi"))
      .def_static("rational", &Profile::rational)
      .def_static("rational_zero", &Profile::rational_zero)
      .def_static("gamma", &Profile::gamma, py::arg("s"), py::arg("i"))
      .def_static("parse", &parse_profile, py::arg("json"))
      .def("__call__", &Profile::operator())
      .def("dilate", &Profile::dilate)
      .def(py::self * py::self)
      .def("__rmul__", [](const Profile& p, double a) { return a * p; });

  py::class_<SymbolExpr>(m, "Symbol")
      .def_static("zero", &SymbolExpr::zero, py::arg("k"), py::arg("cls"))
      .def_static("homogeneous", &SymbolExpr::homogeneous, py::arg("plus"), py::arg("minus"))
      .def_static("fiber_constant", &SymbolExpr::fiber_constant)
      .def_static("unit", &SymbolExpr::unit, py::arg("k") = 1)
      .def_static("separable", &SymbolExpr::separable, py::arg("c"), py::arg("rho"), py::arg("cls"))
      .def_static("parse", &parse_symbol, py::arg("json"), py::arg("default_k") = 1)
      .def_property_readonly("k", &SymbolExpr::k)
      .def_property_readonly("symbol_class", &SymbolExpr::symbol_class)
      .def_property_readonly("degree", &SymbolExpr::degree)
      .def("__call__", &SymbolExpr::operator(), py::arg("x"), py::arg("xi"))
      .def("plus_loop", &SymbolExpr::plus_loop)
      .def("minus_loop", &SymbolExpr::minus_loop)
      .def("sup_norm", &SymbolExpr::sup_norm)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def("__rmul__", [](const SymbolExpr& a, Complex z) { return z * a; });

  m.def("dilate", &dilate);
  m.def("smash", &smash, py::arg("f"), py::arg("a"));
  m.def("pointwise_mul", &pointwise_mul);
  m.def("adjoint", py::overload_cast<const SymbolExpr&>(&adjoint));

  py::class_<CutFunction>(m, "CutFunction")
      .def(py::init<double>(), py::arg("r0") = 4.0)
      .def_property_readonly("r0", &CutFunction::r0)
      .def("__call__", &CutFunction::operator());

  // ---- quantizers
  py::class_<Atlas>(m, "Atlas")
      .def_static("two_arcs", &Atlas::two_arcs)
      .def_static("trivial", &Atlas::trivial);

  m.def("t_quantize", &t_quantize, py::arg("a"), py::arg("t"), py::arg("grid"));
  m.def("t_quantize_sampled", &t_quantize_sampled, py::arg("a"), py::arg("t"), py::arg("grid"));
  m.def("t_quantize_charts", &t_quantize_charts, py::arg("a"), py::arg("t"), py::arg("atlas"), py::arg("grid"),
        py::arg("pad") = 2);
  m.def("op_quantize", &op_quantize, py::arg("a"), py::arg("theta"), py::arg("grid"));
  m.def("multiplication_operator", &multiplication_operator, py::arg("c"), py::arg("grid"));

  // ---- extension
  m.def("lifting_check", &lifting_check, py::arg("c"), py::arg("grid"), py::arg("theta") = CutFunction());

  // ---- CH maps
  py::class_<Reparametrization>(m, "Reparametrization")
      .def_static("reciprocal", &Reparametrization::reciprocal)
      .def_static("log", &Reparametrization::log)
      .def("__call__", &Reparametrization::operator())
      .def("inverse", &Reparametrization::inverse);

  py::class_<ApproximateUnit>(m, "ApproximateUnit")
      .def_static("rational", &ApproximateUnit::rational)
      .def_static("exponential", &ApproximateUnit::exponential)
      .def("m", &ApproximateUnit::m)
      .def("entry", &ApproximateUnit::entry, py::arg("n"), py::arg("t"))
      .def("at", &ApproximateUnit::at, py::arg("t"), py::arg("grid"))
      .def_property_readonly("kappa", &ApproximateUnit::matched_kappa);

  m.def("quasicentrality_defect", &quasicentrality_defect, py::arg("u"), py::arg("t"), py::arg("a"),
        py::arg("grid"), py::arg("theta") = CutFunction());
  m.def("ch_apply", &ch_apply, py::arg("f"), py::arg("d"), py::arg("t"), py::arg("kappa"), py::arg("u"),
        py::arg("grid"), py::arg("theta") = CutFunction());
  m.def("ch_extended_apply", &ch_extended_apply, py::arg("g"), py::arg("c"), py::arg("t"), py::arg("kappa"),
        py::arg("u"), py::arg("grid"));

  // ---- inverse CH
  m.def("equ1_defect", &equ1_defect, py::arg("a"), py::arg("s"), py::arg("f"), py::arg("theta"), py::arg("grid"));
  m.def("equ2_defect", &equ2_defect, py::arg("a"), py::arg("s"), py::arg("i"), py::arg("j"), py::arg("f"),
        py::arg("theta"), py::arg("grid"));
  m.def("endpoint_aggregate", [](const SymbolExpr& a, int L, int K, const CircleGrid& grid) {
    return endpoint_defect(a, L, K, grid).aggregate;
  }, py::arg("a"), py::arg("L"), py::arg("K"), py::arg("grid"));

  // ---- index
  m.def("winding_number", py::overload_cast<const TrigLoop&>(&winding_number));
  m.def("analytic_index", &analytic_index);
  m.def("fredholm_index", [](const SymbolExpr& sigma, const CircleGrid& grid, double eps_rank) {
    FredholmOptions opt;
    opt.eps_rank = eps_rank;
    return fredholm_index_svd(sigma, grid, opt);
  }, py::arg("sigma"), py::arg("grid"), py::arg("eps_rank") = 1e-6);
  m.def("higson_trace_index", [](const SymbolExpr& sigma, double t, const CircleGrid& grid) {
    return higson_trace_index(sigma, t, grid);
  }, py::arg("sigma"), py::arg("t"), py::arg("grid"));

  // ---- experiments
  py::class_<ExperimentConfig>(m, "Config")
      .def_static("default", &default_config)
      .def_static("parse", &parse_config, py::arg("json"))
      .def_static("load", &load_config, py::arg("path"))
      .def_readwrite("N", &ExperimentConfig::N)
      .def_readwrite("r0", &ExperimentConfig::r0)
      .def("symbol", &ExperimentConfig::symbol, py::return_value_policy::copy);

  bind_result<DefectSweepResult>(m, "DefectSweepResult");
  bind_result<ChCompareResult>(m, "ChCompareResult");
  bind_result<HomotopyResult>(m, "HomotopyResult");
  bind_result<IndexCompareResult>(m, "IndexCompareResult");

  // The runners spend their time in C++; release the GIL.
  const auto nogil = py::call_guard<py::gil_scoped_release>();
  m.def("defect_sweep", &run_defect_sweep, py::arg("config"), py::arg("threads") = 1, nogil);
  m.def("ch_compare", &run_ch_compare, py::arg("config"), py::arg("threads") = 1, nogil);
  m.def("homotopy_verify", &run_homotopy_verify, py::arg("config"), py::arg("threads") = 1, nogil);
  m.def("index_compare", &run_index_compare, py::arg("config"), py::arg("threads") = 1, nogil);
}
