// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Ground-state energy minimization for lambda-nonlinear Schrodinger "
               "potentials over rearrangement classes"};
  app.require_subcommand(1);

  using namespace qdot::cli;

  CommonArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve the nonlinear eigenproblem for fixed "
                                            "potentials");
  solve->add_option("--config", solve_args.config_path, "Problem config (JSON)")
      ->required();
  solve->add_option("--out-dir", solve_args.out_dir, "Output directory");
  solve->add_option("--resolution", solve_args.resolution, "Override mesh resolution");
  solve->add_option("--tol", solve_args.tol, "Override solver tolerance");

  OptimizeArgs opt_args;
  auto* optimize = app.add_subcommand("optimize", "Minimize the ground-state energy over "
                                                  "the rearrangement classes");
  optimize->add_option("--config", opt_args.config_path, "Problem config (JSON)")
      ->required();
  optimize->add_option("--out-dir", opt_args.out_dir, "Output directory");
  optimize->add_option("--resolution", opt_args.resolution, "Override mesh resolution");
  optimize->add_option("--tol", opt_args.tol, "Override stagnation tolerance");
  optimize->add_option("--start", opt_args.start,
                       "Start policy: adversarial | schwarz | random | csv:DIR");
  optimize->add_option("--seed", opt_args.seed, "Seed for --start random");
  optimize->add_flag("--force", opt_args.force, "Optimize even when admissibility fails");
  optimize->add_flag("--snapshots", opt_args.snapshots,
                     "Dump per-iteration p/q/u fields under OUT_DIR/snapshots/");

  CommonArgs check_args;
  auto* check = app.add_subcommand("check", "Check the admissibility conditions");
  check->add_option("--config", check_args.config_path, "Problem config (JSON)")
      ->required();
  check->add_option("--out-dir", check_args.out_dir, "Output directory");
  check->add_option("--resolution", check_args.resolution, "Override mesh resolution");

  CommonArgs schwarz_args;
  auto* schwarz = app.add_subcommand("schwarz", "Write the Schwarz rearrangements of both "
                                                "classes");
  schwarz->add_option("--config", schwarz_args.config_path, "Problem config (JSON)")
      ->required();
  schwarz->add_option("--out-dir", schwarz_args.out_dir, "Output directory");
  schwarz->add_option("--resolution", schwarz_args.resolution, "Override mesh resolution");

  ReproduceArgs repro_args;
  auto* repro = app.add_subcommand("reproduce-paper",
                                   "Reproduce the published disk example end to end");
  repro->add_option("--out-dir", repro_args.out_dir, "Output directory");
  repro->add_option("--resolution", repro_args.resolution, "Radial cells (default 2048)");
  repro->add_option("--tol", repro_args.tol, "Stagnation tolerance");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return cmd_solve(solve_args);
  if (optimize->parsed()) return cmd_optimize(opt_args);
  if (check->parsed()) return cmd_check(check_args);
  if (schwarz->parsed()) return cmd_schwarz(schwarz_args);
  if (repro->parsed()) return cmd_reproduce_paper(repro_args);
  return 0;
}
