// SPDX-License-Identifier: Apache-2.0
#include "qdot/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qdot {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_field_csv(std::ostream& out, const Mesh& mesh, const Field& f) {
  if (f.size() != mesh.cell_count())
    throw std::invalid_argument("write_field_csv: field does not match mesh");
  const bool disk = mesh.is_disk();
  out << "cell_index," << (disk ? "r" : "x") << ',' << (disk ? "theta" : "y")
      << ",measure,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << i << ',' << fmt(mesh.coord1[i]) << ',' << fmt(mesh.coord2[i]) << ','
        << fmt(mesh.measure[i]) << ',' << fmt(f[i]) << '\n';
  }
}

void write_field_csv(const std::string& path, const Mesh& mesh, const Field& f) {
  auto out = open_out(path);
  write_field_csv(out, mesh, f);
}

Field read_field_csv(std::istream& in, const Mesh& mesh) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("field CSV: missing header");
  Field f;
  f.reserve(mesh.cell_count());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // value is the fifth column
    std::size_t pos = 0;
    for (int c = 0; c < 4; ++c) {
      pos = line.find(',', pos);
      if (pos == std::string::npos)
        throw std::runtime_error("field CSV: malformed row " + std::to_string(row + 2));
      ++pos;
    }
    f.push_back(std::strtod(line.c_str() + pos, nullptr));
    ++row;
  }
  if (f.size() != mesh.cell_count())
    throw std::runtime_error("field CSV: " + std::to_string(f.size()) +
                             " rows do not match mesh with " +
                             std::to_string(mesh.cell_count()) + " cells");
  return f;
}

Field read_field_csv(const std::string& path, const Mesh& mesh) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_field_csv(in, mesh);
}

std::string mesh_to_json(const Mesh& mesh) {
  ordered_json j;
  j["kind"] = to_string(mesh.kind);
  if (mesh.kind == MeshKind::rectangle) {
    j["geometry"] = {{"a_nm", mesh.side_a}, {"b_nm", mesh.side_b}};
    j["resolution"] = {{"nx", mesh.n1}, {"ny", mesh.n2}};
  } else {
    j["geometry"] = {{"radius_nm", mesh.radius}};
    if (mesh.kind == MeshKind::disk_radial)
      j["resolution"] = {{"n", mesh.n1}};
    else
      j["resolution"] = {{"n_r", mesh.n1}, {"n_t", mesh.n2}};
  }
  j["cells"] = mesh.cell_count();
  j["area_nm2"] = mesh.domain_area();
  return j.dump(2) + "\n";
}

std::string ground_state_to_json(const Mesh& mesh, const GroundState& gs) {
  ordered_json j;
  j["lambda"] = gs.lambda;
  j["lambda_squared"] = gs.lambda * gs.lambda;
  j["residual"] = gs.residual;
  j["linear_mu"] = gs.linear_mu;
  j["iterations"] = {{"outer", gs.outer_iterations}, {"inner", gs.inner_iterations}};
  j["tied_value_fraction"] = tied_value_fraction(gs.u, 1e-12);
  j["mesh"] = ordered_json::parse(mesh_to_json(mesh));
  return j.dump(2) + "\n";
}

std::string report_to_json(const OptimizationReport& report) {
  ordered_json j;
  j["lambda"] = report.lambda();
  j["lambda_squared"] = report.lambda() * report.lambda();
  j["lambda_history"] = report.lambda_history;
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  j["cycled"] = report.cycled;
  j["monotone"] = report.monotone;
  j["fixed_point_gap"] = report.fixed_point_gap;
  if (report.schwarz_gap) {
    j["schwarz_gap"] = *report.schwarz_gap;
    j["schwarz_gap_p"] = *report.schwarz_gap_p;
    j["schwarz_gap_q"] = *report.schwarz_gap_q;
  }
  j["safeguard_rejections"] = report.safeguard_rejections;
  j["residual"] = report.final_state.residual;
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

std::string admissibility_to_json(const AdmissibilityReport& report) {
  ordered_json j;
  j["c_omega"] = report.c_omega;
  j["condition_p"] = {{"ok", report.cond_p_ok},
                      {"max_p", report.p_max},
                      {"rhs", report.cond_p_rhs},
                      {"margin", report.cond_p_margin}};
  j["condition_q"] = {{"ok", report.cond_q_ok},
                      {"lhs", report.cond_q_lhs},
                      {"rhs", report.cond_q_rhs}};
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
}

}  // namespace qdot
