#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "passivize/battery.hpp"
#include "passivize/bounds.hpp"
#include "passivize/collective.hpp"
#include "passivize/oracle.hpp"
#include "passivize/operators.hpp"
#include "passivize/system.hpp"

namespace py = pybind11;
using namespace passivize;

namespace {

SystemSpec make_spec(std::vector<double> a, std::vector<double> p, double omega) {
  return SystemSpec(std::move(a), std::move(p), omega);
}

py::dict bounds_dict(const BoundReport& b) {
  py::dict d;
  d["tau_qsl"] = b.tau_qsl;
  d["tau_upper"] = b.tau_upper;
  if (b.tau_exact) {
    d["tau_exact"] = *b.tau_exact;
    d["exact_method"] = to_string(*b.exact_method);
  }
  d["numerical"] = b.numerical;
  d["warnings"] = b.warnings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum speed limits and passivization times under bounded bandwidth";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<SystemSpec>(m, "SystemSpec")
      .def(py::init(&make_spec), py::arg("a"), py::arg("p"), py::arg("omega") = 1.0)
      .def_property_readonly("dim", &SystemSpec::dim)
      .def_property_readonly("a", [](const SystemSpec& s) { return s.a(); })
      .def_property_readonly("p", [](const SystemSpec& s) { return s.p(); })
      .def_property_readonly("omega", &SystemSpec::omega);

  py::class_<Permutation>(m, "Permutation")
      .def(py::init<std::vector<int>>())
      .def_property_readonly("images", &Permutation::images)
      .def("__len__", &Permutation::size)
      .def("__call__", &Permutation::operator())
      .def("__eq__", [](const Permutation& a, const Permutation& b) { return a == b; });

  // operator layer
  m.def("expm_skew",
        [](const Matrix& h, double t) { return expm_skew(HermitianOperator(h), t).matrix(); },
        py::arg("h"), py::arg("t"));
  m.def("principal_log", [](const Matrix& u) {
    SkewLog lg = principal_log(UnitaryOperator(u));
    return py::make_tuple(lg.entries, lg.phases);
  });
  m.def("hs_norm", &hs_norm);
  m.def("geodesic_distance", [](const Matrix& u, const Matrix& v) {
    return geodesic_distance(UnitaryOperator(u), UnitaryOperator(v));
  });
  m.def("bandwidth", [](const Matrix& h) { return bandwidth(HermitianOperator(h)); });
  m.def(
      "von_neumann_evolve",
      [](const std::function<Matrix(double)>& h, const Matrix& rho0, double t, int steps) {
        return von_neumann_evolve(h, DensityOperator(rho0), t, steps).matrix();
      },
      py::arg("h"), py::arg("rho0"), py::arg("t"), py::arg("steps"));

  // system layer
  m.def("min_expectation", &min_expectation);
  m.def("discrepancy", &discrepancy);
  m.def("is_passive",
        [](const Matrix& rho, const SystemSpec& spec) {
          return is_passive(DensityOperator(rho), spec);
        });
  m.def("canonical_passivizing_permutation", &canonical_passivizing_permutation);
  m.def("enumerate_passivizing_permutations", &enumerate_passivizing_permutations);
  m.def("permutation_operator",
        [](const Permutation& s) { return permutation_operator(s).matrix(); });
  m.def("cycle_decomposition",
        [](const Permutation& s) { return cycle_decomposition(s).cycles; });

  // bounds layer
  m.def("tau_qsl", &tau_qsl);
  m.def("tau_pas_nondegenerate", &tau_pas_nondegenerate);
  m.def("tau_upper_from_permutation", &tau_upper_from_permutation, py::arg("sigma"),
        py::arg("spec"), py::arg("minimize_over_divisions") = false);
  m.def("compute_bounds", [](const SystemSpec& spec) { return bounds_dict(compute_bounds(spec)); });
  m.def(
      "build_time_optimal_hamiltonian",
      [](const SystemSpec& spec, const std::string& method) -> py::object {
        HamiltonianMethod hm;
        if (method == "involution")
          hm = HamiltonianMethod::involution;
        else if (method == "nondegenerate")
          hm = HamiltonianMethod::nondegenerate;
        else if (method == "maximally_active")
          hm = HamiltonianMethod::maximally_active;
        else
          throw InvalidSpec("unknown Hamiltonian method '" + method + "'");
        auto built = build_time_optimal_hamiltonian(spec, hm);
        if (!built) return py::none();
        return py::make_tuple(built->h.matrix(), built->tau);
      },
      py::arg("spec"), py::arg("method") = "involution");
  m.def("distance_to_passivizing_set",
        [](const SystemSpec& spec, const Permutation& sigma) {
          SetDistance sd = distance_to_passivizing_set(spec, sigma);
          return py::make_tuple(sd.distance, sd.tau);
        });

  // multipartite layer
  m.def("delta_n",
        [](const SystemSpec& spec, int copies) {
          return delta_n(CollectiveSpec{spec, copies, std::nullopt});
        });
  m.def("delta_n_closed", [](const std::string& kind, int copies) {
    if (kind == "qubit_pure") return delta_n_closed(ActiveKind::qubit_pure, copies);
    if (kind == "qubit_mixed") return delta_n_closed(ActiveKind::qubit_mixed, copies);
    if (kind == "qutrit_rank2") return delta_n_closed(ActiveKind::qutrit_rank2, copies);
    if (kind == "qutrit_full") return delta_n_closed(ActiveKind::qutrit_full, copies);
    throw InvalidSpec("unknown closed-form kind '" + kind + "'");
  });
  m.def("tau_cqsl", [](const SystemSpec& spec, int copies) {
    return tau_cqsl(CollectiveSpec{spec, copies, std::nullopt});
  });
  m.def("advantage_ratio", [](const SystemSpec& spec, int copies) {
    return advantage_ratio(CollectiveSpec{spec, copies, std::nullopt});
  });
  m.def("assisted_bounds", [](const SystemSpec& spec, int n_c) {
    AssistedBounds ab = assisted_bounds(spec, n_c);
    return py::make_tuple(ab.tau_aqsl, ab.tau_upper);
  });
  m.def("collective_hamiltonian", [](const SystemSpec& spec, int copies) {
    CollectiveSpec cspec{spec, copies, std::nullopt};
    return collective_hamiltonian(cspec, canonical_passivizing_permutation(spec)).matrix();
  });

  // battery layer
  m.def("ergotropy", [](std::vector<double> eps, std::vector<double> p, double omega) {
    return ergotropy(BatterySpec(std::move(eps), std::move(p), omega));
  });
  m.def("energy_transfer_variance",
        [](const Matrix& u, std::vector<double> eps, std::vector<double> p, double omega) {
          return energy_transfer_variance(UnitaryOperator(u),
                                          BatterySpec(std::move(eps), std::move(p), omega));
        });

  // oracle layer
  m.def(
      "numeric_min_distance",
      [](const SystemSpec& spec, int restarts, std::uint64_t seed) {
        OracleResult res = numeric_min_distance(spec, restarts, seed);
        py::dict d;
        d["distance"] = res.best_distance;
        d["unitary"] = res.best_unitary.matrix();
        d["restarts"] = res.restarts_used;
        d["converged"] = res.converged;
        d["spread"] = res.spread;
        return d;
      },
      py::arg("spec"), py::arg("restarts") = 16, py::arg("seed") = 1);
}
