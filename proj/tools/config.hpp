// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qdot/field.hpp"
#include "qdot/mesh.hpp"
#include "qdot/nlep.hpp"
#include "qdot/optimize.hpp"

namespace qdot::cli {

/// Configuration problem: malformed JSON, missing keys, wrong units.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PotentialSpec {
  enum class Kind { annulus, constant, csv } kind = Kind::constant;
  double height = 0.0;
  double inner_r = 0.0;
  double outer_r = 0.0;
  std::string csv_path;
};

struct ProblemConfig {
  // mesh
  MeshKind mesh_kind = MeshKind::disk_radial;
  double radius = 0.0, side_a = 0.0, side_b = 0.0;
  std::size_t n1 = 0, n2 = 0;

  SolverOptions solver;
  PotentialSpec p, q;

  std::size_t max_iters = 200;
  double opt_tol = 1e-10;
  std::string start = "adversarial";
};

/// Parses and validates a config file. Every physical quantity must carry
/// its expected unit annotation ({"value": x, "unit": "..."}).
ProblemConfig load_config(const std::string& path);

/// Mesh from the config, with an optional per-direction resolution override.
Mesh build_mesh(const ProblemConfig& cfg, std::optional<std::size_t> resolution);

/// Realizes a potential spec as a field on the mesh.
Field realize_potential(const Mesh& mesh, const PotentialSpec& spec);

}  // namespace qdot::cli
