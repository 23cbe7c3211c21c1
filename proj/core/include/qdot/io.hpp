// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "qdot/admissibility.hpp"
#include "qdot/field.hpp"
#include "qdot/mesh.hpp"
#include "qdot/nlep.hpp"
#include "qdot/optimize.hpp"

namespace qdot {

/// Field CSV: header plus one row per cell, columns
/// (cell_index, r|x, theta|y, measure, value), 17 significant digits,
/// LF line endings. Round trips bit-identically.
void write_field_csv(std::ostream& out, const Mesh& mesh, const Field& f);
void write_field_csv(const std::string& path, const Mesh& mesh, const Field& f);

/// Reads the value column back; validates the row count against the mesh.
Field read_field_csv(std::istream& in, const Mesh& mesh);
Field read_field_csv(const std::string& path, const Mesh& mesh);

/// JSON descriptions (kind, geometry, resolution and solution metadata).
/// Deterministic key order and formatting.
std::string mesh_to_json(const Mesh& mesh);
std::string ground_state_to_json(const Mesh& mesh, const GroundState& gs);
std::string report_to_json(const OptimizationReport& report);
std::string admissibility_to_json(const AdmissibilityReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace qdot
