#include <optional>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tpa/faddeeva.hpp"
#include "tpa/response.hpp"
#include "tpa/schmidt.hpp"
#include "tpa/shaping.hpp"

namespace py = pybind11;
using namespace tpa;

namespace {

std::vector<double> nodes_of(const FrequencyGrid& g) { return g.nodes(); }

SvdMethod method_from(const std::string& m) {
  if (m == "auto") return SvdMethod::Auto;
  if (m == "dense") return SvdMethod::Dense;
  if (m == "truncated") return SvdMethod::Truncated;
  throw std::invalid_argument("method must be auto, dense or truncated");
}

FrequencyGrid grid_for(const LevelSystem& sys, std::optional<double> half_width, std::optional<double> step,
                       std::optional<double> center) {
  const FrequencyGrid d = default_grid(sys);
  const double c = center.value_or(0.5 * (d.min() + d.max()));
  return make_grid(c, half_width.value_or(0.5 * (d.max() - d.min())), step.value_or(d.step()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Optimal two-photon states for two-photon absorption, Schmidt analysis and phase shaping";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<LevelSystem>(m, "LevelSystem")
      .def(py::init([](double detuning, double deviation, double gamma_e, double omega_e, double prefactor) {
             return LevelSystem(LevelParams{.detuning = detuning,
                                            .deviation = deviation,
                                            .gamma_e = gamma_e,
                                            .omega_e = omega_e,
                                            .prefactor = prefactor});
           }),
           py::arg("detuning"), py::arg("deviation"), py::arg("gamma_e") = 1.0, py::arg("omega_e") = 0.0,
           py::arg("prefactor") = 1.0)
      .def_property_readonly("detuning", &LevelSystem::detuning)
      .def_property_readonly("deviation", &LevelSystem::deviation)
      .def_property_readonly("gamma_e", &LevelSystem::gamma_e)
      .def_property_readonly("omega_e", &LevelSystem::omega_e)
      .def_property_readonly("gamma_f", &LevelSystem::gamma_f)
      .def_property_readonly("omega_f", &LevelSystem::omega_f)
      .def("__repr__", [](const LevelSystem& s) {
        return "LevelSystem(detuning=" + std::to_string(s.detuning()) + ", deviation=" + std::to_string(s.deviation()) +
               ")";
      });

  m.def("response", [](const LevelSystem& s, py::array_t<double> a_, py::array_t<double> b_) {
          return py::vectorize([&s](double a, double b) { return response_infinite(s, a, b); })(a_, b_);
        },
        py::arg("system"), py::arg("omega1"), py::arg("omega2"), "[L_e(w1) + L_e(w2)] L_f(w1 + w2)");
  m.def("optimal_state", [](const LevelSystem& s, py::array_t<double> a_, py::array_t<double> b_) {
          return py::vectorize([&s](double a, double b) { return optimal_state(s, a, b); })(a_, b_);
        },
        py::arg("system"), py::arg("omega1"), py::arg("omega2"));
  m.def("normalization", &normalization, py::arg("system"));
  m.def("marginal_sum", [](const LevelSystem& s, py::array_t<double> w_) {
          return py::vectorize([&s](double w) { return marginal_sum(s, w); })(w_);
        },
        py::arg("system"), py::arg("omega_plus"));
  m.def("marginal_single", [](const LevelSystem& s, py::array_t<double> w_) {
          return py::vectorize([&s](double w) { return marginal_single(s, w); })(w_);
        },
        py::arg("system"), py::arg("omega"));

  py::class_<SchmidtDecomposition>(m, "SchmidtDecomposition")
      .def_property_readonly("coefficients",
                             [](const SchmidtDecomposition& d) {
                               return py::array_t<double>(d.coefficients.size(), d.coefficients.data());
                             })
      .def_readonly("modes1", &SchmidtDecomposition::modes1)
      .def_readonly("modes2", &SchmidtDecomposition::modes2)
      .def_property_readonly("nodes1", [](const SchmidtDecomposition& d) { return nodes_of(d.grid1); })
      .def_property_readonly("nodes2", [](const SchmidtDecomposition& d) { return nodes_of(d.grid2); })
      .def_readonly("truncated", &SchmidtDecomposition::truncated)
      .def_readonly("residual", &SchmidtDecomposition::residual)
      .def_readonly("kernel_norm2", &SchmidtDecomposition::kernel_norm2)
      .def_readonly("warnings", &SchmidtDecomposition::warnings)
      .def_property_readonly("captured_norm2", &SchmidtDecomposition::captured_norm2)
      .def_property_readonly("entropy", [](const SchmidtDecomposition& d) { return entropy(d); })
      .def_property_readonly("enhancement", [](const SchmidtDecomposition& d) { return quantum_enhancement(d); })
      .def("pairing_gap", [](const SchmidtDecomposition& d, std::optional<std::size_t> pairs) {
        return pairing_check(d, pairs);
      }, py::arg("pairs") = py::none());

  m.def(
      "schmidt",
      [](const LevelSystem& sys, std::optional<double> half_width, std::optional<double> step,
         std::optional<double> center, std::optional<std::size_t> rank, const std::string& method, bool renormalize,
         bool modes) {
        const auto g = grid_for(sys, half_width, step, center);
        py::gil_scoped_release release;
        return decompose(sample_optimal_state(sys, g),
                         {.rank = rank, .renormalize = renormalize, .compute_modes = modes,
                          .method = method_from(method)});
      },
      py::arg("system"), py::kw_only(), py::arg("half_width") = py::none(), py::arg("step") = py::none(),
      py::arg("center") = py::none(), py::arg("rank") = py::none(), py::arg("method") = "auto",
      py::arg("renormalize") = false, py::arg("modes") = false,
      "Schmidt decomposition of the optimal state; unset grid values follow the default grid.");

  m.def("default_grid", [](const LevelSystem& s) { return nodes_of(default_grid(s)); }, py::arg("system"));

  m.def(
      "asymptotic_bounds",
      [](const LevelSystem& sys, double half_width, double step) {
        const auto b = [&] {
          py::gil_scoped_release release;
          return asymptotic_bounds(sys, GridSpec{half_width, step}, {.compute_modes = false});
        }();
        return py::make_tuple(b.e_inf, b.s_inf);
      },
      py::arg("system"), py::arg("half_width") = 200.0, py::arg("step") = 0.25,
      "Large-detuning limits (enhancement, entropy in bits).");

  m.def("entropy", [](std::vector<double> c) { return entropy(c); }, py::arg("coefficients"));

  py::class_<ShapingSolution>(m, "ShapingSolution")
      .def_property_readonly("kind", [](const ShapingSolution& s) { return s.kind == ShaperKind::Slm ? "slm" : "pump"; })
      .def_property_readonly("nodes", [](const ShapingSolution& s) { return nodes_of(s.grid); })
      .def_readonly("phases", &ShapingSolution::phase_nodes)
      .def_readonly("response", &ShapingSolution::response)
      .def_readonly("p_shaped", &ShapingSolution::p_shaped)
      .def_readonly("p_unshaped", &ShapingSolution::p_unshaped)
      .def_readonly("e_opt", &ShapingSolution::e_opt)
      .def_readonly("residual", &ShapingSolution::residual)
      .def_readonly("populations_in_units_of_n", &ShapingSolution::populations_in_units_of_n)
      .def_readonly("diagnostics", &ShapingSolution::diagnostics)
      .def("shaper", &ShapingSolution::shaper)
      .def("population", [](const ShapingSolution& s, std::vector<cplx> m1, std::vector<cplx> m2) {
        return shaped_population(s, m1, m2);
      }, py::arg("m1"), py::arg("m2") = std::vector<cplx>{});

  m.def(
      "optimal_slm",
      [](const LevelSystem& sys, double sigma) { return optimal_slm(sys, CwSpdc::gaussian(sigma)); },
      py::arg("system"), py::arg("sigma"), "Identical phase shapers on cw-pumped pairs with a Gaussian profile.");

  m.def(
      "optimal_pump",
      [](const LevelSystem& sys, double sigma, double phi, std::optional<double> zeta) {
        PhaseMatching pm = InfinitePhaseMatching{};
        if (zeta) pm = GaussianPhaseMatching{*zeta};
        return optimal_pump_shaper(sys, PumpShaped::chirped_gaussian(sys.omega_f(), sigma, phi, pm));
      },
      py::arg("system"), py::arg("sigma"), py::arg("phi") = 0.0, py::arg("zeta") = py::none(),
      "Pump phase shaper for a chirped Gaussian pump; zeta=None means infinite phase matching.");

  m.def("eta_infinite", [](const LevelSystem& s, py::array_t<double> w_) {
          return py::vectorize([&s](double w) { return eta_infinite(s, w); })(w_);
        },
        py::arg("system"), py::arg("omega_plus"));
  m.def("eta_gaussian", [](const LevelSystem& s, py::array_t<double> w_, py::array_t<double> z_) {
          return py::vectorize([&s](double w, double z) { return eta_gaussian(s, w, z); })(w_, z_);
        },
        py::arg("system"), py::arg("omega_plus"), py::arg("zeta"));
  m.def("faddeeva", py::vectorize(&faddeeva), py::arg("z"));
  m.def("complex_normal_cdf", py::vectorize(&complex_normal_cdf), py::arg("z"));
}
