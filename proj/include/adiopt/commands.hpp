#pragma once

#include "adiopt/scenario.hpp"

namespace adiopt {

struct CommandOptions {
  std::filesystem::path config_path;
  std::filesystem::path out_dir = ".";
  std::optional<int> steps_override;
  std::optional<std::uint64_t> seed_override;
};

// Exit codes: 0 success, 1 invalid configuration, 2 numerical failure.
// Outputs are deterministic: identical config and seed give byte-identical
// files. Nothing is written unless the run completes.
int cmd_simulate(const CommandOptions& options);
int cmd_residual(const CommandOptions& options);
int cmd_optimize(const CommandOptions& options);
int cmd_oracle_check(const CommandOptions& options);

}  // namespace adiopt
