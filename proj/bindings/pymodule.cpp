#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adiopt/commands.hpp"
#include "adiopt/optimality.hpp"

namespace py = pybind11;
using namespace adiopt;

namespace {

std::vector<PiecewiseLinear> interior_functions(double duration, const rmat& coefficients) {
  PathParameters params;
  params.duration = duration;
  params.coefficients = coefficients;
  return params.functions();
}

py::dict certificate_dict(const ResidualCertificate& cert) {
  py::dict d;
  d["sup_norm"] = cert.residual.sup_norm;
  d["l2_norm"] = cert.residual.l2_norm;
  d["omega_scale"] = cert.omega_scale;
  d["tolerance"] = cert.tolerance;
  d["pass"] = cert.pass;
  return d;
}

py::dict report_dict(const OptimizationReport& report) {
  py::dict d;
  d["iterations"] = report.iterations;
  d["A_history"] = report.a_history;
  d["initial_A"] = report.initial_a;
  d["final_A"] = report.final_a;
  d["final_residual_sup"] = report.final_residual_sup;
  d["converged"] = report.converged;
  d["step_sizes"] = report.step_sizes;
  d["gap_rejections"] = report.gap_rejections;
  d["coefficients"] = report.final_params.coefficients;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Adiabatic evolution simulation, stationarity certificates and fixed-endpoint "
            "isospectral path optimization";

  py::class_<RotatingSpinParams>(m, "RotatingSpinParams")
      .def(py::init([](double omega0, double omega, double theta) {
             RotatingSpinParams p{omega0, omega, theta};
             p.validate();
             return p;
           }),
           py::arg("omega0"), py::arg("omega"), py::arg("theta"))
      .def_readonly("omega0", &RotatingSpinParams::omega0)
      .def_readonly("omega", &RotatingSpinParams::omega)
      .def_readonly("theta", &RotatingSpinParams::theta)
      .def("__repr__", [](const RotatingSpinParams& p) {
        return "RotatingSpinParams(omega0=" + std::to_string(p.omega0) +
               ", omega=" + std::to_string(p.omega) + ", theta=" + std::to_string(p.theta) + ")";
      });

  py::class_<SpinEffectiveParams>(m, "SpinEffectiveParams")
      .def_readonly("omega_bar", &SpinEffectiveParams::omega_bar)
      .def_readonly("beta", &SpinEffectiveParams::beta);

  py::class_<HamiltonianPath>(m, "HamiltonianPath")
      .def_property_readonly("dim", &HamiltonianPath::dim)
      .def_property_readonly("duration", &HamiltonianPath::duration)
      .def_property_readonly("kind",
                             [](const HamiltonianPath& p) { return std::string(to_string(p.kind())); })
      .def("at", [](const HamiltonianPath& p, double t) { return p.at(t).matrix(); }, py::arg("t"))
      .def_property_readonly("kinks", &HamiltonianPath::kinks);

  py::class_<PropagatorTrace>(m, "PropagatorTrace")
      .def_property_readonly("times",
                             [](const PropagatorTrace& t) { return t.grid.nodes(); })
      .def_property_readonly("unitaries",
                             [](const PropagatorTrace& t) {
                               std::vector<cmat> us;
                               us.reserve(t.unitaries.size());
                               for (const auto& u : t.unitaries) us.push_back(u.matrix());
                               return us;
                             })
      .def_readonly("max_unitarity_defect", &PropagatorTrace::max_unitarity_defect)
      .def_property_readonly("final",
                             [](const PropagatorTrace& t) { return t.final().matrix(); });

  m.def("hermitian_basis",
        [](int dim) {
          std::vector<cmat> out;
          for (const auto& b : hermitian_basis(dim)) out.push_back(b.matrix());
          return out;
        },
        py::arg("dim"),
        "Generalized Gell-Mann basis: dim^2 - 1 traceless Hermitian matrices, Tr(l_i l_j) = 2 d_ij");

  m.def("expm_skew",
        [](const cmat& h, double s) { return expm_skew(HermitianOperator(h), s).matrix(); },
        py::arg("h"), py::arg("s"), "exp(-i s H) for Hermitian H");

  m.def("rotating_spin_path",
        [](const RotatingSpinParams& p, double duration) { return rotating_spin_path(p, duration); },
        py::arg("params"), py::arg("duration"));

  m.def("lambda_ramp_path",
        [](const cmat& h0, const cmat& h1, double lambda_scale, double duration) {
          return lambda_ramp_path(HermitianOperator(h0), HermitianOperator(h1), lambda_scale,
                                  duration);
        },
        py::arg("h0"), py::arg("h1"), py::arg("lambda_scale"), py::arg("duration"));

  m.def("isospectral_path",
        [](const cmat& h0, const cmat& v_end, double duration,
           std::optional<rmat> coefficients) {
          IsospectralParams p{HermitianOperator(h0), UnitaryOperator(v_end), {}};
          if (coefficients) p.coefficients = interior_functions(duration, *coefficients);
          return isospectral_path(p, duration);
        },
        py::arg("h0"), py::arg("v_end"), py::arg("duration"), py::arg("coefficients") = std::nullopt,
        "coefficients: (dim^2 - 1) x M matrix of interior control values on a uniform grid");

  m.def("perturbed_path",
        [](const HamiltonianPath& base, const rmat& coefficients, double epsilon) {
          return perturbed_path(base, interior_functions(base.duration(), coefficients), epsilon);
        },
        py::arg("base"), py::arg("coefficients"), py::arg("epsilon"));

  m.def("time_dilate", &time_dilate, py::arg("base"), py::arg("lambda_"));

  m.def("evolve", py::overload_cast<const HamiltonianPath&, int>(&evolve), py::arg("path"),
        py::arg("steps"));

  m.def("final_adiabaticity", &final_adiabaticity, py::arg("path"), py::arg("level") = 0,
        py::arg("steps") = 4096, py::arg("gap_floor") = kDefaultGapFloor);

  m.def("adiabaticity_series",
        [](const HamiltonianPath& path, int level, int steps, double gap_floor) {
          const PropagatorTrace trace = evolve(path, steps);
          const EigenstateTrace eigen = track_eigenstates(path, trace.grid, level, gap_floor);
          const AdiabaticityTrace a =
              adiabaticity_trace(state_trace(trace, eigen.states.front()), eigen);
          return std::make_pair(trace.grid.nodes(), a.values);
        },
        py::arg("path"), py::arg("level") = 0, py::arg("steps") = 4096,
        py::arg("gap_floor") = kDefaultGapFloor);

  m.def("slowness_series",
        [](const HamiltonianPath& path, int m_level, int n_level, int steps, double gap_floor) {
          const TimeGrid grid = simulation_grid(path, steps);
          return std::make_pair(grid.nodes(),
                                slowness_diagnostic(path, grid, m_level, n_level, gap_floor));
        },
        py::arg("path"), py::arg("m"), py::arg("n"), py::arg("steps") = 4096,
        py::arg("gap_floor") = kDefaultGapFloor);

  m.def("effective_params", &effective_params, py::arg("params"));
  m.def("analytic_propagator",
        [](const RotatingSpinParams& p, double t) { return analytic_propagator(p, t).matrix(); },
        py::arg("params"), py::arg("t"));
  m.def("analytic_adiabaticity", &analytic_adiabaticity, py::arg("params"), py::arg("t"));
  m.def("spin_period", &spin_period, py::arg("params"));
  m.def("spin_initial_state",
        [](const RotatingSpinParams& p) { return spin_initial_state(p).vector(); },
        py::arg("params"));

  m.def("residual_certificate",
        [](const HamiltonianPath& path, int level, int steps, double tol, double gap_floor) {
          return certificate_dict(residual_certificate(path, level, steps, tol, gap_floor));
        },
        py::arg("path"), py::arg("level") = 0, py::arg("steps") = 4096, py::arg("tol") = 1e-5,
        py::arg("gap_floor") = kDefaultGapFloor);

  m.def("stationarity_series",
        [](const HamiltonianPath& path, int level, int steps, double gap_floor) {
          const PropagatorTrace trace = evolve(path, steps);
          const EigenstateTrace eigen = track_eigenstates(path, trace.grid, level, gap_floor);
          const StationarityResidual res = stationarity_residual(trace, path, eigen);
          return std::make_pair(trace.grid.nodes(), res.values);
        },
        py::arg("path"), py::arg("level") = 0, py::arg("steps") = 4096,
        py::arg("gap_floor") = kDefaultGapFloor,
        "Returns (times, R) with R[i, k] the residual along basis direction i at time k");

  m.def("optimize_isospectral",
        [](const cmat& h0, const cmat& v_end, double duration, int level, int steps,
           int control_nodes, int max_iters, double tol, double initial_step,
           std::optional<rmat> start, double gap_floor) {
          OptimizationScenario scenario{HermitianOperator(h0), UnitaryOperator(v_end), duration,
                                        level, steps, gap_floor};
          PathParameters params =
              PathParameters::zeros(scenario.h0.dim(), control_nodes, duration);
          if (start) {
            if (start->rows() != params.coefficients.rows()) {
              throw ValidationError("optimize_isospectral: start must have dim^2 - 1 rows");
            }
            params.coefficients = *start;
            params.validate();
          }
          AscentConfig config;
          config.max_iters = max_iters;
          config.tol = tol;
          config.initial_step = initial_step;
          return report_dict(ascend(params, scenario, config));
        },
        py::arg("h0"), py::arg("v_end"), py::arg("duration"), py::arg("level") = 0,
        py::arg("steps") = 1024, py::arg("control_nodes") = 32, py::arg("max_iters") = 200,
        py::arg("tol") = 1e-5, py::arg("initial_step") = 1.0, py::arg("start") = std::nullopt,
        py::arg("gap_floor") = kDefaultGapFloor);

#ifdef ADIOPT_VERSION
  m.attr("__version__") = ADIOPT_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
