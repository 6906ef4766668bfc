#include "adiopt/scenario.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace adiopt {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ValidationError("config: " + where + " must be an object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ValidationError("config: unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

double get_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError("config: missing \"" + key + "\" in " + where);
  const auto& v = j.at(key);
  if (!v.is_number()) throw ValidationError("config: \"" + key + "\" in " + where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError("config: \"" + key + "\" in " + where + " must be finite");
  return x;
}

double get_number_or(const json& j, const std::string& key, const std::string& where, double fallback) {
  return j.contains(key) ? get_number(j, key, where) : fallback;
}

int get_int(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError("config: missing \"" + key + "\" in " + where);
  const auto& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ValidationError("config: \"" + key + "\" in " + where + " must be an integer");
  }
  return v.get<int>();
}

int get_int_or(const json& j, const std::string& key, const std::string& where, int fallback) {
  return j.contains(key) ? get_int(j, key, where) : fallback;
}

bool get_bool_or(const json& j, const std::string& key, const std::string& where, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) {
    throw ValidationError("config: \"" + key + "\" in " + where + " must be a boolean");
  }
  return j.at(key).get<bool>();
}

cmat parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() < 2) {
    throw ValidationError("config: " + where + " must be a square matrix with dim >= 2");
  }
  const auto d = j.size();
  cmat m(d, d);
  for (size_t r = 0; r < d; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || row.size() != d) {
      throw ValidationError("config: " + where + " must be square");
    }
    for (size_t c = 0; c < d; ++c) {
      const auto& e = row.at(c);
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() || !e.at(1).is_number()) {
        throw ValidationError("config: entries of " + where + " must be [re, im] pairs");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          cxd(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  if (!all_finite(m)) throw ValidationError("config: " + where + " has non-finite entries");
  return m;
}

rmat parse_coefficients(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ValidationError("config: " + where + " must be a nonempty array");
  const auto rows = j.size();
  size_t cols = 0;
  for (size_t r = 0; r < rows; ++r) {
    if (!j.at(r).is_array()) throw ValidationError("config: " + where + " rows must be arrays");
    if (r == 0) cols = j.at(r).size();
    if (j.at(r).size() != cols || cols == 0) {
      throw ValidationError("config: " + where + " must be rectangular and nonempty");
    }
  }
  rmat c(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t k = 0; k < cols; ++k) {
      const auto& e = j.at(r).at(k);
      if (!e.is_number()) throw ValidationError("config: " + where + " entries must be numbers");
      c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = e.get<double>();
      if (!std::isfinite(c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)))) {
        throw ValidationError("config: " + where + " has non-finite entries");
      }
    }
  }
  return c;
}

RotatingSpinParams parse_spin_params(const json& j, const std::string& where) {
  RotatingSpinParams p;
  p.omega0 = get_number(j, "omega0", where);
  p.omega = get_number(j, "omega", where);
  p.theta = get_number(j, "theta", where);
  p.validate();
  return p;
}

double parse_duration(const json& j, const std::string& where, const RotatingSpinParams* spin) {
  const bool has_t = j.contains("T");
  const bool has_periods = j.contains("T_periods");
  if (has_t == has_periods) {
    throw ValidationError("config: " + where + " needs exactly one of \"T\" or \"T_periods\"");
  }
  double duration = 0.0;
  if (has_t) {
    duration = get_number(j, "T", where);
  } else {
    if (!spin) {
      throw ValidationError("config: \"T_periods\" is only meaningful for rotating_spin scenarios");
    }
    duration = get_number(j, "T_periods", where) * spin_period(*spin);
  }
  if (duration <= 0.0) throw ValidationError("config: duration in " + where + " must be positive");
  return duration;
}

std::variant<RotatingSpinScenario, LambdaRampScenario, IsospectralScenario> parse_scenario(
    const json& j) {
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw ValidationError("config: scenario needs a string \"kind\"");
  }
  const std::string kind = j.at("kind").get<std::string>();

  if (kind == "rotating_spin") {
    check_keys(j, "scenario", {"kind", "omega0", "omega", "theta", "T", "T_periods", "dilation"});
    RotatingSpinScenario s;
    s.params = parse_spin_params(j, "scenario");
    s.duration = parse_duration(j, "scenario", &s.params);
    return s;
  }

  if (kind == "lambda_ramp") {
    check_keys(j, "scenario", {"kind", "Lambda", "T", "endpoints", "dilation"});
    if (!j.contains("endpoints")) throw ValidationError("config: lambda_ramp needs \"endpoints\"");
    const json& e = j.at("endpoints");
    if (!e.contains("kind") || !e.at("kind").is_string()) {
      throw ValidationError("config: endpoints needs a string \"kind\"");
    }
    const std::string ekind = e.at("kind").get<std::string>();
    LambdaRampScenario s{HermitianOperator::zero(2), HermitianOperator::zero(2), 1.0, 0.0};
    if (ekind == "rotating_spin_endpoints") {
      check_keys(e, "endpoints", {"kind", "omega0", "omega", "theta", "T", "T_periods"});
      const RotatingSpinParams p = parse_spin_params(e, "endpoints");
      const double spin_t = parse_duration(e, "endpoints", &p);
      const HamiltonianPath spin = rotating_spin_path(p, spin_t);
      s.h0 = spin.at(0.0);
      s.h1 = spin.at(spin_t);
    } else if (ekind == "explicit") {
      check_keys(e, "endpoints", {"kind", "H0", "H1"});
      if (!e.contains("H0") || !e.contains("H1")) {
        throw ValidationError("config: explicit endpoints need \"H0\" and \"H1\"");
      }
      s.h0 = HermitianOperator(parse_matrix(e.at("H0"), "endpoints.H0"));
      s.h1 = HermitianOperator(parse_matrix(e.at("H1"), "endpoints.H1"));
    } else {
      throw ValidationError("config: unknown endpoints kind \"" + ekind + "\"");
    }
    s.lambda_scale = get_number(j, "Lambda", "scenario");
    if (s.lambda_scale < 1.0) throw ValidationError("config: Lambda must be >= 1");
    s.duration = parse_duration(j, "scenario", nullptr);
    return s;
  }

  if (kind == "isospectral") {
    check_keys(j, "scenario", {"kind", "H0", "V_end", "T", "coefficients", "dilation"});
    if (!j.contains("H0") || !j.contains("V_end")) {
      throw ValidationError("config: isospectral needs \"H0\" and \"V_end\"");
    }
    IsospectralScenario s{HermitianOperator(parse_matrix(j.at("H0"), "scenario.H0")),
                          UnitaryOperator(parse_matrix(j.at("V_end"), "scenario.V_end")), 0.0, {}};
    if (s.v_end.dim() != s.h0.dim()) {
      throw ValidationError("config: H0 and V_end dimensions differ");
    }
    s.duration = parse_duration(j, "scenario", nullptr);
    if (j.contains("coefficients")) {
      rmat c = parse_coefficients(j.at("coefficients"), "scenario.coefficients");
      const int d = s.h0.dim();
      if (c.rows() != d * d - 1) {
        throw ValidationError("config: coefficients must have dim^2 - 1 rows");
      }
      s.coefficients = std::move(c);
    }
    return s;
  }

  throw ValidationError("config: unknown scenario kind \"" + kind + "\"");
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: JSON parse error: ") + e.what());
  }
  check_keys(j, "top level",
             {"scenario", "steps", "level", "tolerances", "slowness_pair", "output", "optimizer",
              "oracle"});
  if (!j.contains("scenario")) throw ValidationError("config: missing \"scenario\"");

  ScenarioConfig config;
  config.scenario = parse_scenario(j.at("scenario"));

  const json& sc = j.at("scenario");
  if (sc.contains("dilation")) {
    const double lam = get_number(sc, "dilation", "scenario");
    if (lam <= 0.0) throw ValidationError("config: dilation must be positive");
    config.dilation = lam;
  }

  config.steps = get_int_or(j, "steps", "top level", 4096);
  if (config.steps < 1) throw ValidationError("config: steps must be >= 1");
  config.level = get_int_or(j, "level", "top level", 0);
  const int d = path_dim(config);
  if (config.level < 0 || config.level >= d) {
    throw ValidationError("config: level out of range for dim " + std::to_string(d));
  }

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    check_keys(t, "tolerances", {"residual", "gap_floor"});
    config.residual_tol = get_number_or(t, "residual", "tolerances", config.residual_tol);
    config.gap_floor = get_number_or(t, "gap_floor", "tolerances", config.gap_floor);
    if (config.residual_tol <= 0.0 || config.gap_floor <= 0.0) {
      throw ValidationError("config: tolerances must be positive");
    }
  }

  if (j.contains("slowness_pair")) {
    const json& p = j.at("slowness_pair");
    if (!p.is_array() || p.size() != 2 || !p.at(0).is_number_integer() ||
        !p.at(1).is_number_integer()) {
      throw ValidationError("config: slowness_pair must be [m, n] integers");
    }
    const int m = p.at(0).get<int>(), n = p.at(1).get<int>();
    if (m == n || m < 0 || n < 0 || m >= d || n >= d) {
      throw ValidationError("config: slowness_pair levels invalid for dim " + std::to_string(d));
    }
    config.slowness_pair = std::make_pair(m, n);
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    check_keys(o, "output", {"csv", "summary", "report", "path"});
    auto get_name = [&o](const char* key) -> std::optional<std::string> {
      if (!o.contains(key)) return std::nullopt;
      if (!o.at(key).is_string()) throw ValidationError("config: output names must be strings");
      return o.at(key).get<std::string>();
    };
    config.output.csv = get_name("csv");
    config.output.summary = get_name("summary");
    config.output.report = get_name("report");
    config.output.path = get_name("path");
  }

  if (j.contains("optimizer")) {
    const json& o = j.at("optimizer");
    check_keys(o, "optimizer",
               {"control_nodes", "max_iters", "tol", "initial_step", "seed", "start",
                "start_amplitude"});
    config.optimizer.control_nodes = get_int_or(o, "control_nodes", "optimizer", 32);
    config.optimizer.max_iters = get_int_or(o, "max_iters", "optimizer", 200);
    config.optimizer.tol = get_number_or(o, "tol", "optimizer", 1e-5);
    config.optimizer.initial_step = get_number_or(o, "initial_step", "optimizer", 1.0);
    if (config.optimizer.control_nodes < 1 || config.optimizer.max_iters < 0 ||
        config.optimizer.tol <= 0.0 || config.optimizer.initial_step <= 0.0) {
      throw ValidationError("config: invalid optimizer settings");
    }
    if (o.contains("seed")) {
      if (!o.at("seed").is_number_integer() || o.at("seed").get<std::int64_t>() < 0) {
        throw ValidationError("config: seed must be a non-negative integer");
      }
      config.optimizer.seed = o.at("seed").get<std::uint64_t>();
    }
    if (o.contains("start")) {
      if (!o.at("start").is_string()) throw ValidationError("config: optimizer.start must be a string");
      const std::string start = o.at("start").get<std::string>();
      if (start == "zero") {
        config.optimizer.random_start = false;
      } else if (start == "random") {
        config.optimizer.random_start = true;
      } else {
        throw ValidationError("config: optimizer.start must be \"zero\" or \"random\"");
      }
    }
    config.optimizer.start_amplitude = get_number_or(o, "start_amplitude", "optimizer", 0.2);
    if (config.optimizer.start_amplitude <= 0.0) {
      throw ValidationError("config: start_amplitude must be positive");
    }
  }

  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    check_keys(o, "oracle",
               {"random_sets", "tolerance", "lambda_sweep", "lambda_values", "ramp_duration",
                "ramp_endpoint_time", "ramp_steps"});
    config.oracle.random_sets = get_int_or(o, "random_sets", "oracle", 5);
    config.oracle.tolerance = get_number_or(o, "tolerance", "oracle", 1e-5);
    config.oracle.lambda_sweep = get_bool_or(o, "lambda_sweep", "oracle", false);
    config.oracle.ramp_duration = get_number_or(o, "ramp_duration", "oracle", 3.0);
    config.oracle.ramp_endpoint_time = get_number_or(o, "ramp_endpoint_time", "oracle", 2.0);
    config.oracle.ramp_steps = get_int_or(o, "ramp_steps", "oracle", 262144);
    if (config.oracle.random_sets < 0 || config.oracle.tolerance <= 0.0 ||
        config.oracle.ramp_duration <= 0.0 || config.oracle.ramp_endpoint_time <= 0.0 ||
        config.oracle.ramp_steps < 1) {
      throw ValidationError("config: invalid oracle settings");
    }
    if (o.contains("lambda_values")) {
      const json& lv = o.at("lambda_values");
      if (!lv.is_array() || lv.size() < 2) {
        throw ValidationError("config: lambda_values must be an array of >= 2 values");
      }
      config.oracle.lambda_values.clear();
      for (const auto& v : lv) {
        if (!v.is_number() || v.get<double>() < 1.0) {
          throw ValidationError("config: lambda_values must be numbers >= 1");
        }
        config.oracle.lambda_values.push_back(v.get<double>());
      }
    }
  }

  return config;
}

ScenarioConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError("config: cannot open " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

int path_dim(const ScenarioConfig& config) {
  if (const auto* s = std::get_if<LambdaRampScenario>(&config.scenario)) return s->h0.dim();
  if (const auto* s = std::get_if<IsospectralScenario>(&config.scenario)) return s->h0.dim();
  return 2;
}

const RotatingSpinScenario* spin_scenario(const ScenarioConfig& config) {
  return std::get_if<RotatingSpinScenario>(&config.scenario);
}

std::pair<int, int> slowness_pair(const ScenarioConfig& config) {
  if (config.slowness_pair) return *config.slowness_pair;
  const int d = path_dim(config);
  const int n = config.level;
  return {n + 1 < d ? n + 1 : n - 1, n};
}

HamiltonianPath build_path(const ScenarioConfig& config) {
  HamiltonianPath path = std::visit(
      [&](const auto& s) -> HamiltonianPath {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RotatingSpinScenario>) {
          return rotating_spin_path(s.params, s.duration);
        } else if constexpr (std::is_same_v<T, LambdaRampScenario>) {
          return lambda_ramp_path(s.h0, s.h1, s.lambda_scale, s.duration);
        } else {
          IsospectralParams p{s.h0, s.v_end, {}};
          if (s.coefficients) {
            PathParameters params;
            params.duration = s.duration;
            params.coefficients = *s.coefficients;
            p.coefficients = params.functions();
          }
          return isospectral_path(p, s.duration);
        }
      },
      config.scenario);
  if (config.dilation) path = time_dilate(path, *config.dilation);
  return path;
}

OptimizationScenario optimization_scenario(const ScenarioConfig& config) {
  if (config.dilation) {
    throw ValidationError("optimize: dilation wrappers are not supported; fold the rate into the scenario");
  }
  if (const auto* s = std::get_if<RotatingSpinScenario>(&config.scenario)) {
    const HamiltonianPath spin = rotating_spin_path(s->params, s->duration);
    return OptimizationScenario{spin.at(0.0), spin.frame(s->duration), s->duration, config.level,
                                config.steps, config.gap_floor};
  }
  if (const auto* s = std::get_if<IsospectralScenario>(&config.scenario)) {
    return OptimizationScenario{s->h0, s->v_end, s->duration, config.level, config.steps,
                                config.gap_floor};
  }
  throw ValidationError("optimize: scenario must be rotating_spin or isospectral");
}

PathParameters starting_parameters(const ScenarioConfig& config) {
  const OptimizationScenario scenario = optimization_scenario(config);
  const int d = scenario.h0.dim();
  PathParameters params =
      PathParameters::zeros(d, config.optimizer.control_nodes, scenario.duration);

  const auto* iso = std::get_if<IsospectralScenario>(&config.scenario);
  if (iso && iso->coefficients) {
    if (iso->coefficients->rows() != params.coefficients.rows()) {
      throw ValidationError("optimize: coefficient rows must equal dim^2 - 1");
    }
    params.coefficients = *iso->coefficients;
    params.validate();
    return params;
  }

  if (config.optimizer.random_start) {
    // uniform in [-1, 1), then rescaled so the infinity norm equals the
    // requested amplitude exactly
    std::mt19937_64 gen(config.optimizer.seed);
    for (int i = 0; i < params.coefficients.rows(); ++i) {
      for (int k = 0; k < params.coefficients.cols(); ++k) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
        params.coefficients(i, k) = 2.0 * u - 1.0;
      }
    }
    const double sup = params.coefficients.cwiseAbs().maxCoeff();
    if (sup > 0.0) params.coefficients *= config.optimizer.start_amplitude / sup;
  }
  return params;
}

}  // namespace adiopt
