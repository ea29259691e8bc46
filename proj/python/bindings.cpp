#include "cs2d/cli.hpp"
#include "cs2d/dynamics.hpp"
#include "cs2d/expansion.hpp"
#include "cs2d/observables.hpp"
#include "cs2d/specialfn.hpp"
#include "cs2d/verify.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

namespace py = pybind11;
using namespace cs2d;

namespace {

py::array_t<complex> grid_to_array(const Grid2D& grid) {
  py::array_t<complex> out({grid.nx(), grid.ny()});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    for (std::size_t j = 0; j < grid.ny(); ++j) view(i, j) = grid.at(i, j);
  }
  return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict sample_to_dict(const TrajectorySample& s) {
  py::dict d;
  d["t"] = s.t;
  d["centroid_xi"] = s.centroid_xi;
  d["centroid_eta"] = s.centroid_eta;
  d["var_xi"] = s.var_xi;
  d["var_eta"] = s.var_eta;
  d["norm"] = s.norm;
  d["peak_density"] = s.peak_density;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coherent states of the 2D isotropic harmonic oscillator in the (H, l_z) eigenbasis.";

  py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

  m.def("laguerre", &specialfn::laguerre, py::arg("n"), py::arg("mu"), py::arg("x"),
        "Generalized Laguerre polynomial L_n^mu(x).");
  m.def("log_factorial", &specialfn::log_factorial, py::arg("n"));
  m.def("binomial", &specialfn::binomial, py::arg("top"), py::arg("k"));
  m.def(
      "gauss_laguerre",
      [](int order) {
        const auto rule = specialfn::gauss_laguerre(order);
        return py::make_tuple(to_array(rule.nodes), to_array(rule.weights),
                              to_array(rule.log_weights));
      },
      py::arg("order"), "Nodes, weights and log-weights of the order-n rule for weight e^{-u}.");
  m.def(
      "verify_laguerre_integral",
      [](int n, int mu, int lambda) {
        const auto r = specialfn::verify_laguerre_integral(n, mu, lambda);
        return py::make_tuple(r.closed_form, r.quadrature);
      },
      py::arg("n"), py::arg("mu"), py::arg("lam"));

  py::enum_<Chirality>(m, "Chirality")
      .value("retarded", Chirality::retarded)
      .value("advanced", Chirality::advanced);

  py::class_<ModeIndex>(m, "ModeIndex")
      .def(py::init<int, int>(), py::arg("m"), py::arg("n_r"))
      .def_readonly("m", &ModeIndex::m)
      .def_readonly("n_r", &ModeIndex::n_r)
      .def_property_readonly("principal", &ModeIndex::principal)
      .def("__eq__", [](const ModeIndex& a, const ModeIndex& b) { return a == b; })
      .def("__hash__", [](const ModeIndex& k) { return py::hash(py::make_tuple(k.m, k.n_r)); })
      .def("__repr__", [](const ModeIndex& k) {
        return "ModeIndex(m=" + std::to_string(k.m) + ", n_r=" + std::to_string(k.n_r) + ")";
      });
  m.def("modes_in_shell", &modes_in_shell, py::arg("N"));
  m.def("energy", &energy, py::arg("mode"));

  py::class_<PacketParams>(m, "PacketParams")
      .def(py::init<double, double, Chirality, double>(), py::arg("xi0"), py::arg("eta0"),
           py::arg("chirality") = Chirality::retarded, py::arg("omega") = 1.0)
      .def_readonly("xi0", &PacketParams::xi0)
      .def_readonly("eta0", &PacketParams::eta0)
      .def_readonly("chirality", &PacketParams::chirality)
      .def_readonly("omega", &PacketParams::omega)
      .def_property_readonly("a", &PacketParams::a)
      .def_property_readonly("b", &PacketParams::b)
      .def("__repr__", [](const PacketParams& p) {
        std::ostringstream os;
        os << "PacketParams(xi0=" << p.xi0 << ", eta0=" << p.eta0 << ", chirality="
           << (p.chirality == Chirality::retarded ? "retarded" : "advanced") << ")";
        return os.str();
      });

  m.def("eigenstate", &eigenstate, py::arg("mode"), py::arg("rho"), py::arg("phi"));
  m.def("coherent_2d", &coherent_2d, py::arg("params"), py::arg("xi"), py::arg("eta"),
        py::arg("t"));
  m.def("initial_state", &initial_state, py::arg("params"), py::arg("xi"), py::arg("eta"));
  m.def("classical_center", &classical_center, py::arg("params"), py::arg("t"));

  m.def("coeff_circular", &coeff_circular, py::arg("xi0"), py::arg("mode"));
  m.def("coeff_elliptic", &coeff_elliptic, py::arg("params"), py::arg("mode"));
  m.def(
      "coeff_quadrature",
      [](const PacketParams& p, const ModeIndex& mode, std::optional<int> radial_order,
         std::optional<int> angular_points) {
        return coeff_quadrature(p, mode, radial_order.value_or(recommended_radial_order(p, mode)),
                                angular_points.value_or(recommended_angular_points(p, mode)));
      },
      py::arg("params"), py::arg("mode"), py::arg("radial_order") = py::none(),
      py::arg("angular_points") = py::none());
  m.def("auto_nmax", &auto_nmax, py::arg("params"));

  py::class_<CoefficientTable>(m, "CoefficientTable")
      .def_readonly("params", &CoefficientTable::params)
      .def_readonly("n_max", &CoefficientTable::n_max)
      .def_readonly("tail_mass", &CoefficientTable::tail_mass)
      .def("sum_squares", &CoefficientTable::sum_squares)
      .def("__getitem__", &CoefficientTable::at)
      .def("__len__", [](const CoefficientTable& t) { return t.entries.size(); })
      .def("entries", [](const CoefficientTable& t) {
        py::list out;
        for (const auto& [mode, c] : t.entries) out.append(py::make_tuple(mode.m, mode.n_r, c));
        return out;
      });
  m.def("build_table", &build_table, py::arg("params"), py::arg("n_max") = py::none());

  m.def(
      "compute_report",
      [](const CoefficientTable& table) {
        const auto r = compute_report(table);
        py::dict d;
        d["mean_m"] = r.mean_m;
        d["mean_abs_m"] = r.mean_abs_m;
        d["mean_nr"] = r.mean_nr;
        d["mean_lz"] = r.mean_lz;
        d["mean_energy"] = r.mean_energy;
        d["norm_deficit"] = r.norm_deficit;
        return d;
      },
      py::arg("table"));
  m.def("closed_form_lz", &closed_form_lz, py::arg("params"));
  m.def("closed_form_energy", &closed_form_energy, py::arg("params"));
  m.def(
      "principal_distribution",
      [](const CoefficientTable& table) { return marginals(table).by_principal; },
      py::arg("table"));
  m.def("poisson_principal", &poisson_principal, py::arg("params"), py::arg("N"));

  m.def(
      "evolve_closed_form",
      [](const PacketParams& p, double half_width, int points, double t) {
        return grid_to_array(evolve_closed_form(p, Grid2D::centered(half_width, points), t));
      },
      py::arg("params"), py::arg("half_width"), py::arg("points"), py::arg("t"));
  m.def(
      "evolve_spectral",
      [](const CoefficientTable& table, double half_width, int points, double t) {
        return grid_to_array(evolve_spectral(table, Grid2D::centered(half_width, points), t));
      },
      py::arg("table"), py::arg("half_width"), py::arg("points"), py::arg("t"));
  m.def(
      "trace_orbit",
      [](const PacketParams& p, const std::vector<double>& times, int points) {
        const auto samples = trace_orbit(p, times, Grid2D::for_packet(p, points));
        py::list out;
        for (const auto& s : samples) out.append(sample_to_dict(s));
        return out;
      },
      py::arg("params"), py::arg("times"), py::arg("points") = 257);

  m.def(
      "run_verification",
      [](std::optional<PacketParams> point) {
        VerifyOptions options;
        options.point = point;
        py::list out;
        for (const auto& r : run_verification(options)) {
          out.append(py::make_tuple(r.name, r.passed, r.residual, r.tolerance));
        }
        return out;
      },
      py::arg("point") = py::none(), "List of (name, passed, residual, tolerance).");

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"cs2d"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end in process: (exit_code, stdout, stderr).");
}
