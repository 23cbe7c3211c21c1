// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace qdot {

class Mesh;

/// One value per mesh cell. Units are contextual: p carries the energy
/// scale, q and the squared eigenvalue carry energy^2, wave functions are
/// measure-weighted L2-normalized.
using Field = std::vector<double>;

struct DistributionLevel {
  double value;
  double measure;
};

/// Sorted (value, measure) pairs -- the discrete identity of a rearrangement
/// class. Values are strictly decreasing across levels; equal values are
/// merged, measures are positive. Everything downstream that optimizes over
/// a rearrangement class consumes a Distribution, never the generating field.
class Distribution {
 public:
  Distribution() = default;

  /// Sorts descending by value, merges equal values, drops zero-measure
  /// levels. Throws std::invalid_argument on a negative measure.
  explicit Distribution(std::vector<DistributionLevel> levels);

  const std::vector<DistributionLevel>& levels() const { return levels_; }
  double total_measure() const { return total_measure_; }
  bool empty() const { return levels_.empty(); }

  double max_value() const;
  double min_value() const;
  /// Measure of the set where the value is positive.
  double support_measure() const;
  /// Characteristic class: a single constant level, or {beta, 0} with beta>0.
  bool two_level() const;

 private:
  std::vector<DistributionLevel> levels_;
  double total_measure_ = 0.0;
};

/// Exact multiset of (value, summed measure) of f, merged on equal values,
/// sorted by value descending.
Distribution distribution_of(const Mesh& mesh, const Field& f);

/// True iff the distribution functions of f and g agree: matching value
/// levels within `tol`, and cumulative measures within one maximal cell
/// measure (or `tol`, whichever is larger) at every level. The cell-measure
/// slack is the discretization policy for non-uniform meshes, where exact
/// discrete rearrangement is generally impossible.
bool is_rearrangement(const Mesh& mesh, const Field& f, const Field& g, double tol);

/// Step function: `height` on cells with inner_r < r <= outer_r, else 0.
/// Disk meshes only.
Field make_annular_characteristic(const Mesh& mesh, double height, double inner_r,
                                  double outer_r);

/// Fraction of cells that share their value with at least one other cell
/// (within `tol`). Diagnostic for the discrete analog of the level-set
/// condition; no threshold is enforced anywhere.
double tied_value_fraction(const Field& u, double tol);

}  // namespace qdot
