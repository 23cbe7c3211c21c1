// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "qdot/field.hpp"
#include "qdot/mesh.hpp"

namespace qdot {

/// Metadata for one rearrangement: how many cells were involved in weight
/// ties (broken by ascending cell index), and the worst deviation between a
/// realized cumulative level measure and its target. On non-uniform meshes
/// the deviation is bounded by one maximal cell measure; cells are never
/// split into fractional values, so characteristic classes stay
/// characteristic.
struct RearrangeStats {
  std::size_t tied_cells = 0;
  double measure_error = 0.0;
};

/// Largest distribution values onto the smallest weights (the decreasing
/// monotone rearrangement eta(w)): the unique minimizer of
/// sum_i out_i w_i m_i over the class on uniform meshes with distinct
/// weights.
Field opposite_rearrangement(const Mesh& mesh, const Distribution& dist, const Field& w,
                             RearrangeStats* stats = nullptr);

/// Largest values onto the largest weights (the increasing monotone
/// rearrangement xi(w)); maximizes sum_i out_i w_i m_i.
Field similar_rearrangement(const Mesh& mesh, const Distribution& dist, const Field& w,
                            RearrangeStats* stats = nullptr);

/// Characteristic-class minimizer of the weighted integral: beta on the
/// smallest-w cells until the support measure is filled. Requires a
/// two-level distribution.
Field bathtub_min(const Mesh& mesh, const Distribution& dist, const Field& w,
                  RearrangeStats* stats = nullptr);

/// Mirror of bathtub_min: mass on the largest-w cells.
Field bathtub_max(const Mesh& mesh, const Distribution& dist, const Field& w,
                  RearrangeStats* stats = nullptr);

/// Radial increasing representative of the class on a disk mesh.
Field schwarz_increasing(const Mesh& mesh, const Distribution& dist,
                         RearrangeStats* stats = nullptr);

/// Radial decreasing representative of the class on a disk mesh.
Field schwarz_decreasing(const Mesh& mesh, const Distribution& dist,
                         RearrangeStats* stats = nullptr);

}  // namespace qdot
