#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adiopt/optimizer.hpp"
#include "adiopt/spin_oracle.hpp"

namespace adiopt {

struct RotatingSpinScenario {
  RotatingSpinParams params;
  double duration = 0.0;  // resolved from "T" or "T_periods" (multiples of 2 pi / omega_bar)
};

struct LambdaRampScenario {
  HermitianOperator h0;
  HermitianOperator h1;
  double lambda_scale = 1.0;
  double duration = 0.0;
};

struct IsospectralScenario {
  HermitianOperator h0;
  UnitaryOperator v_end;
  double duration = 0.0;
  std::optional<rmat> coefficients;  // (dim^2 - 1) x interior control values
};

struct OptimizerSettings {
  int control_nodes = 32;  // interior control nodes of the coefficient grid
  int max_iters = 200;
  double tol = 1e-5;
  double initial_step = 1.0;
  std::uint64_t seed = 0;
  bool random_start = false;
  double start_amplitude = 0.2;  // infinity norm of a random start
};

struct OracleSettings {
  int random_sets = 5;
  double tolerance = 1e-5;
  bool lambda_sweep = false;
  std::vector<double> lambda_values = {1.0, 10.0, 100.0, 1000.0};
  double ramp_duration = 3.0;
  double ramp_endpoint_time = 2.0;  // ramp endpoints H(0), H(t) of the spin path
  int ramp_steps = 262144;
};

struct OutputNames {
  std::optional<std::string> csv;
  std::optional<std::string> summary;
  std::optional<std::string> report;
  std::optional<std::string> path;
};

/// One fully validated scenario file. Unknown keys anywhere are hard errors.
struct ScenarioConfig {
  std::variant<RotatingSpinScenario, LambdaRampScenario, IsospectralScenario> scenario;
  std::optional<double> dilation;
  int steps = 4096;
  int level = 0;
  double residual_tol = 1e-5;
  double gap_floor = kDefaultGapFloor;
  std::optional<std::pair<int, int>> slowness_pair;  // (m, n)
  OptimizerSettings optimizer;
  OracleSettings oracle;
  OutputNames output;
};

ScenarioConfig parse_config_text(const std::string& json_text);
ScenarioConfig load_config(const std::filesystem::path& file);

/// The simulated path, including the optional time-dilation wrapper.
HamiltonianPath build_path(const ScenarioConfig& config);

int path_dim(const ScenarioConfig& config);

/// Non-null when the (undilated) scenario is the rotating-spin model.
const RotatingSpinScenario* spin_scenario(const ScenarioConfig& config);

/// The slowness pair (m, n): configured value, or (level +- 1, level).
std::pair<int, int> slowness_pair(const ScenarioConfig& config);

/// Fixed-endpoint optimization problem for `optimize`; requires an undilated
/// rotating_spin or isospectral scenario.
OptimizationScenario optimization_scenario(const ScenarioConfig& config);

/// Zero or seeded-random starting coefficients per the optimizer settings.
PathParameters starting_parameters(const ScenarioConfig& config);

}  // namespace adiopt
