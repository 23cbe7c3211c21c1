// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qdot::cli {

// Stable exit codes, shared by all subcommands:
//   0 success, 1 admissibility conditions fail (check), 2 solver error,
//   3 config error, 4 admissibility failure without --force (optimize),
//   5 reproduction assertion failure.
struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::size_t> resolution;
  std::optional<double> tol;
};

struct OptimizeArgs : CommonArgs {
  std::string start;  ///< adversarial | schwarz | random | csv:DIR (empty: config)
  std::uint64_t seed = 0;
  bool force = false;
  bool snapshots = false;
};

struct ReproduceArgs {
  std::string out_dir = ".";
  std::size_t resolution = 2048;
  double tol = 1e-10;
};

int cmd_solve(const CommonArgs& args);
int cmd_optimize(const OptimizeArgs& args);
int cmd_check(const CommonArgs& args);
int cmd_schwarz(const CommonArgs& args);
int cmd_reproduce_paper(const ReproduceArgs& args);

}  // namespace qdot::cli
