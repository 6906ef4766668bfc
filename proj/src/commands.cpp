#include "adiopt/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include <json.hpp>

#include "adiopt/optimality.hpp"

namespace adiopt {

namespace {

using nlohmann::json;

std::string sci(double v) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw NumericalError("cannot open output file " + file.string());
  out << text;
  if (!out) throw NumericalError("failed writing " + file.string());
  std::cout << "wrote: " << file.string() << "\n";
}

void write_json(const std::filesystem::path& file, const json& j) {
  write_text(file, j.dump(2) + "\n");
}

json matrix_json(const cmat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(row);
  }
  return rows;
}

json coefficients_json(const rmat& c) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < c.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index k = 0; k < c.cols(); ++k) row.push_back(c(r, k));
    rows.push_back(row);
  }
  return rows;
}

ScenarioConfig load_with_overrides(const CommandOptions& options) {
  ScenarioConfig config = load_config(options.config_path);
  if (options.steps_override) {
    if (*options.steps_override < 1) throw ValidationError("steps override must be >= 1");
    config.steps = *options.steps_override;
  }
  if (options.seed_override) config.optimizer.seed = *options.seed_override;
  return config;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

int cmd_simulate(const CommandOptions& options) {
  return guarded([&]() {
    const ScenarioConfig config = load_with_overrides(options);
    const HamiltonianPath path = build_path(config);
    const auto [m, n] = slowness_pair(config);

    const PropagatorTrace trace = evolve(path, config.steps);
    const EigenstateTrace eigen =
        track_eigenstates(path, trace.grid, config.level, config.gap_floor);
    const auto psi = state_trace(trace, eigen.states.front());
    const AdiabaticityTrace adiabaticity = adiabaticity_trace(psi, eigen);
    const auto slowness = slowness_diagnostic(path, trace.grid, m, n, config.gap_floor);

    std::string csv = "t,A,E_level,min_gap,slowness_diag\n";
    const auto& nodes = trace.grid.nodes();
    for (size_t k = 0; k < nodes.size(); ++k) {
      csv += sci(nodes[k]) + "," + sci(adiabaticity.values[k]) + "," + sci(eigen.energies[k]) +
             "," + sci(eigen.gaps[k]) + "," + sci(slowness[k]) + "\n";
    }
    write_text(options.out_dir / config.output.csv.value_or("simulate.csv"), csv);
    return 0;
  });
}

int cmd_residual(const CommandOptions& options) {
  return guarded([&]() {
    const ScenarioConfig config = load_with_overrides(options);
    const HamiltonianPath path = build_path(config);

    const PropagatorTrace trace = evolve(path, config.steps);
    const EigenstateTrace eigen =
        track_eigenstates(path, trace.grid, config.level, config.gap_floor);
    const StationarityResidual residual = stationarity_residual(trace, path, eigen);
    const double scale = path.initial().spectral_radius();
    const bool pass = residual.sup_norm <= config.residual_tol * scale;

    std::string csv = "t";
    for (int i = 0; i < residual.values.rows(); ++i) csv += ",R_" + std::to_string(i + 1);
    csv += "\n";
    const auto& nodes = trace.grid.nodes();
    for (size_t k = 0; k < nodes.size(); ++k) {
      csv += sci(nodes[k]);
      for (int i = 0; i < residual.values.rows(); ++i) {
        csv += "," + sci(residual.values(i, static_cast<int>(k)));
      }
      csv += "\n";
    }

    json summary{{"sup_norm", residual.sup_norm},
                 {"l2_norm", residual.l2_norm},
                 {"pass", pass},
                 {"tolerance", config.residual_tol},
                 {"omega_scale", scale}};

    write_text(options.out_dir / config.output.csv.value_or("residual.csv"), csv);
    write_json(options.out_dir / config.output.summary.value_or("residual_summary.json"), summary);
    return 0;  // a completed scan is a success even when the certificate fails
  });
}

int cmd_optimize(const CommandOptions& options) {
  return guarded([&]() {
    const ScenarioConfig config = load_with_overrides(options);
    const OptimizationScenario scenario = optimization_scenario(config);
    const PathParameters start = starting_parameters(config);

    AscentConfig ascent;
    ascent.max_iters = config.optimizer.max_iters;
    ascent.tol = config.optimizer.tol;
    ascent.initial_step = config.optimizer.initial_step;
    const OptimizationReport report = ascend(start, scenario, ascent);

    json jreport{{"iterations", report.iterations},
                 {"A_history", report.a_history},
                 {"initial_A", report.initial_a},
                 {"final_A", report.final_a},
                 {"final_residual_sup", report.final_residual_sup},
                 {"converged", report.converged},
                 {"step_sizes", report.step_sizes},
                 {"gap_rejections", report.gap_rejections},
                 {"seed", config.optimizer.seed}};

    // ready-to-run scenario describing the optimized path; feed it back to
    // `residual` or `simulate`
    json jpath{{"scenario",
                json{{"kind", "isospectral"},
                     {"H0", matrix_json(scenario.h0.matrix())},
                     {"V_end", matrix_json(scenario.v_end.matrix())},
                     {"T", scenario.duration},
                     {"coefficients", coefficients_json(report.final_params.coefficients)}}},
               {"steps", scenario.steps},
               {"level", scenario.level},
               {"tolerances", json{{"residual", config.optimizer.tol}, {"gap_floor", config.gap_floor}}}};

    write_json(options.out_dir / config.output.report.value_or("optimize_report.json"), jreport);
    write_json(options.out_dir / config.output.path.value_or("optimized_path.json"), jpath);
    return 0;
  });
}

namespace {

struct CheckList {
  json entries = json::array();
  bool all_pass = true;

  void add(const std::string& name, double deviation, double tolerance) {
    const bool pass = deviation <= tolerance;
    all_pass = all_pass && pass;
    entries.push_back(json{
        {"name", name}, {"max_deviation", deviation}, {"tolerance", tolerance}, {"pass", pass}});
    std::cout << (pass ? "[ ok ] " : "[FAIL] ") << name << ": max deviation " << sci(deviation)
              << " (tolerance " << sci(tolerance) << ")\n";
  }
};

}  // namespace

int cmd_oracle_check(const CommandOptions& options) {
  return guarded([&]() {
    const ScenarioConfig config = load_with_overrides(options);
    const RotatingSpinScenario* spin = spin_scenario(config);
    if (!spin || config.dilation) {
      throw ValidationError("oracle-check: requires an undilated rotating_spin scenario");
    }
    const RotatingSpinParams params = spin->params;
    const double duration = spin->duration;
    const double tol = config.oracle.tolerance;

    CheckList checks;

    {  // closed-form propagator stays unitary
      double dev = 0.0;
      for (int k = 0; k <= 64; ++k) {
        dev = std::max(dev,
                       analytic_propagator(params, duration * (k / 64.0)).unitarity_defect());
      }
      checks.add("analytic_propagator_unitarity", dev, 1e-12);
    }

    {  // closed form solves the Schroedinger equation (fixes all sign conventions)
      const HamiltonianPath path = rotating_spin_path(params, duration);
      const double delta = 1e-5;
      double dev = 0.0;
      for (int k = 1; k < 16; ++k) {
        const double t = duration * (k / 16.0);
        if (t - delta < 0.0 || t + delta > duration) continue;
        const cmat du = (analytic_propagator(params, t + delta).matrix() -
                         analytic_propagator(params, t - delta).matrix()) /
                        (2.0 * delta);
        const cmat resid = cxd(0.0, 1.0) * du -
                           path.at(t).matrix() * analytic_propagator(params, t).matrix();
        dev = std::max(dev, max_abs(resid));
      }
      checks.add("analytic_schrodinger_residual", dev, 1e-7);
    }

    const HamiltonianPath path = rotating_spin_path(params, duration);
    const PropagatorTrace trace = evolve(path, config.steps);
    {  // integrated vs closed-form propagator
      double dev = 0.0;
      const auto& nodes = trace.grid.nodes();
      for (size_t k = 0; k < nodes.size(); ++k) {
        dev = std::max(dev, max_abs(trace.unitaries[k].matrix() -
                                    analytic_propagator(params, nodes[k]).matrix()));
      }
      checks.add("propagator_equivalence", dev, tol);
    }

    {  // full numeric adiabaticity pipeline vs closed form
      const EigenstateTrace eigen = track_eigenstates(path, trace.grid, 0, config.gap_floor);
      const auto psi = state_trace(trace, eigen.states.front());
      const AdiabaticityTrace adiabaticity = adiabaticity_trace(psi, eigen);
      double dev = 0.0;
      const auto& nodes = trace.grid.nodes();
      for (size_t k = 0; k < nodes.size(); ++k) {
        dev = std::max(dev,
                       std::abs(adiabaticity.values[k] - analytic_adiabaticity(params, nodes[k])));
      }
      checks.add("adiabaticity_equivalence", dev, tol);
    }

    {  // effective-parameter special cases
      double dev = 0.0;
      RotatingSpinParams aligned = params;
      aligned.theta = 0.0;
      const SpinEffectiveParams e0 = effective_params(aligned);
      dev = std::max(dev, std::abs(e0.omega_bar - std::abs(params.omega0 + params.omega)));
      dev = std::max(dev,
                     std::abs(e0.beta - (params.omega0 + params.omega >= 0.0 ? 0.0 : kPi)));

      RotatingSpinParams still = params;
      still.omega = 0.0;
      const SpinEffectiveParams e1 = effective_params(still);
      dev = std::max(dev, std::abs(e1.omega_bar - params.omega0));
      dev = std::max(dev, std::abs(e1.beta - params.theta));
      const double t_probe = 0.37 * duration;
      const HamiltonianPath still_path = rotating_spin_path(still, duration);
      dev = std::max(dev, max_abs(analytic_propagator(still, t_probe).matrix() -
                                  expm_skew(still_path.at(0.0), t_probe).matrix()));
      checks.add("effective_params_consistency", dev, 1e-12);
    }

    if (config.oracle.random_sets > 0) {  // randomized full-pipeline equivalence, 4096 steps
      std::mt19937_64 gen(config.optimizer.seed);
      double dev = 0.0;
      for (int s = 0; s < config.oracle.random_sets; ++s) {
        RotatingSpinParams p;
        p.omega0 = 1.0;
        p.omega = 0.1 + 1.9 * uniform01(gen);
        p.theta = 0.1 + (kPi - 0.2) * uniform01(gen);
        const double t_total = spin_period(p);
        const HamiltonianPath rp = rotating_spin_path(p, t_total);
        const PropagatorTrace rt = evolve(rp, 4096);
        const EigenstateTrace re = track_eigenstates(rp, rt.grid, 0, config.gap_floor);
        const AdiabaticityTrace ra = adiabaticity_trace(state_trace(rt, re.states.front()), re);
        const auto& nodes = rt.grid.nodes();
        for (size_t k = 0; k < nodes.size(); ++k) {
          dev = std::max(dev, std::abs(ra.values[k] - analytic_adiabaticity(p, nodes[k])));
        }
      }
      checks.add("randomized_pipeline_equivalence", dev, tol);
    }

    json report{{"checks", checks.entries}};

    if (config.oracle.lambda_sweep) {
      const HamiltonianPath endpoint_path =
          rotating_spin_path(params, config.oracle.ramp_endpoint_time);
      const HermitianOperator h0 = endpoint_path.at(0.0);
      const HermitianOperator h1 = endpoint_path.at(config.oracle.ramp_endpoint_time);
      std::vector<double> defect;
      bool decreasing = true;
      for (size_t k = 0; k < config.oracle.lambda_values.size(); ++k) {
        const HamiltonianPath ramp = lambda_ramp_path(h0, h1, config.oracle.lambda_values[k],
                                                      config.oracle.ramp_duration);
        defect.push_back(1.0 -
                         final_adiabaticity(ramp, config.level, config.oracle.ramp_steps,
                                            config.gap_floor));
        if (k > 0 && !(defect[k] < defect[k - 1])) decreasing = false;
      }
      const bool sweep_pass = decreasing && defect.back() <= 1e-3;
      checks.all_pass = checks.all_pass && sweep_pass;
      report["lambda_sweep"] = json{{"lambda", config.oracle.lambda_values},
                                    {"one_minus_A", defect},
                                    {"strictly_decreasing", decreasing},
                                    {"final_bound", 1e-3},
                                    {"pass", sweep_pass}};
      std::cout << (sweep_pass ? "[ ok ] " : "[FAIL] ") << "lambda_sweep: 1-A from "
                << sci(defect.front()) << " to " << sci(defect.back())
                << (decreasing ? " (decreasing)" : " (NOT decreasing)") << "\n";
    }

    report["pass"] = checks.all_pass;
    report["seed"] = config.optimizer.seed;
    write_json(options.out_dir / config.output.report.value_or("oracle_report.json"), report);
    return checks.all_pass ? 0 : 1;
  });
}

}  // namespace adiopt
