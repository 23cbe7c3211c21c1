// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <fstream>

#include "json.hpp"
#include "qdot/io.hpp"

namespace qdot::cli {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(where + ": missing key \"" + key + "\"");
  return *it;
}

double quantity(const json& j, const char* key, const std::string& expected_unit,
                const std::string& where) {
  const json& node = require(j, key, where);
  if (!node.is_object() || !node.contains("value") || !node.contains("unit"))
    throw ConfigError(where + "." + key + ": expected {\"value\": ..., \"unit\": \"" +
                      expected_unit + "\"}");
  const std::string unit = node["unit"].get<std::string>();
  if (unit != expected_unit)
    throw ConfigError(where + "." + key + ": unit \"" + unit + "\" does not match \"" +
                      expected_unit + "\" (see the unit notes in README)");
  if (!node["value"].is_number())
    throw ConfigError(where + "." + key + ".value: expected a number");
  return node["value"].get<double>();
}

PotentialSpec parse_potential(const json& j, const char* key, const std::string& unit) {
  const json& node = require(j, key, "config");
  const std::string where = std::string("config.") + key;
  PotentialSpec spec;
  if (node.contains("annulus")) {
    const json& a = node["annulus"];
    spec.kind = PotentialSpec::Kind::annulus;
    spec.inner_r = quantity(a, "inner", "nm", where + ".annulus");
    spec.outer_r = quantity(a, "outer", "nm", where + ".annulus");
    spec.height = quantity(a, "height", unit, where + ".annulus");
  } else if (node.contains("constant")) {
    spec.kind = PotentialSpec::Kind::constant;
    spec.height = quantity(node, "constant", unit, where);
  } else if (node.contains("csv")) {
    spec.kind = PotentialSpec::Kind::csv;
    spec.csv_path = node["csv"].get<std::string>();
  } else {
    throw ConfigError(where + ": expected one of \"annulus\", \"constant\", \"csv\"");
  }
  return spec;
}

}  // namespace

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }

  ProblemConfig cfg;
  const json& mesh = require(j, "mesh", "config");
  const std::string kind = require(mesh, "kind", "config.mesh").get<std::string>();
  if (kind == "disk_radial") {
    cfg.mesh_kind = MeshKind::disk_radial;
    cfg.radius = quantity(mesh, "radius", "nm", "config.mesh");
    cfg.n1 = require(mesh, "cells", "config.mesh").get<std::size_t>();
  } else if (kind == "disk_polar") {
    cfg.mesh_kind = MeshKind::disk_polar;
    cfg.radius = quantity(mesh, "radius", "nm", "config.mesh");
    cfg.n1 = require(mesh, "n_r", "config.mesh").get<std::size_t>();
    cfg.n2 = require(mesh, "n_t", "config.mesh").get<std::size_t>();
  } else if (kind == "rectangle") {
    cfg.mesh_kind = MeshKind::rectangle;
    cfg.side_a = quantity(mesh, "a", "nm", "config.mesh");
    cfg.side_b = quantity(mesh, "b", "nm", "config.mesh");
    cfg.n1 = require(mesh, "nx", "config.mesh").get<std::size_t>();
    cfg.n2 = require(mesh, "ny", "config.mesh").get<std::size_t>();
  } else {
    throw ConfigError("config.mesh.kind: unknown kind \"" + kind + "\"");
  }

  cfg.solver.gamma = quantity(j, "gamma", "eV^2*nm^2", "config");
  cfg.p = parse_potential(j, "p", "eV");
  cfg.q = parse_potential(j, "q", "eV^2");

  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (s.contains("eig_tol")) cfg.solver.eig_tol = s["eig_tol"].get<double>();
    if (s.contains("root_tol")) cfg.solver.root_tol = s["root_tol"].get<double>();
    if (s.contains("max_outer")) cfg.solver.max_outer = s["max_outer"].get<std::size_t>();
    if (s.contains("max_inner")) cfg.solver.max_inner = s["max_inner"].get<std::size_t>();
  }
  if (j.contains("optimize")) {
    const json& o = j["optimize"];
    if (o.contains("max_iters")) cfg.max_iters = o["max_iters"].get<std::size_t>();
    if (o.contains("tol")) cfg.opt_tol = o["tol"].get<double>();
    if (o.contains("start")) cfg.start = o["start"].get<std::string>();
  }
  return cfg;
}

Mesh build_mesh(const ProblemConfig& cfg, std::optional<std::size_t> resolution) {
  switch (cfg.mesh_kind) {
    case MeshKind::disk_radial:
      return build_disk_radial(cfg.radius, resolution.value_or(cfg.n1));
    case MeshKind::disk_polar:
      return build_disk_polar(cfg.radius, resolution.value_or(cfg.n1), cfg.n2);
    case MeshKind::rectangle:
      return build_rectangle(cfg.side_a, cfg.side_b, resolution.value_or(cfg.n1),
                             resolution.value_or(cfg.n2));
  }
  throw ConfigError("unknown mesh kind");
}

Field realize_potential(const Mesh& mesh, const PotentialSpec& spec) {
  switch (spec.kind) {
    case PotentialSpec::Kind::annulus:
      return make_annular_characteristic(mesh, spec.height, spec.inner_r, spec.outer_r);
    case PotentialSpec::Kind::constant:
      return Field(mesh.cell_count(), spec.height);
    case PotentialSpec::Kind::csv:
      return read_field_csv(spec.csv_path, mesh);
  }
  throw ConfigError("unknown potential spec");
}

}  // namespace qdot::cli
