// SPDX-License-Identifier: Apache-2.0
#include "qdot/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qdot {

namespace {

/// The one audited code path: cells sorted by weight ascending (ties by
/// ascending cell index), distribution values laid over them in the
/// requested direction. A cell receives the value whose cumulative-measure
/// interval covers the cell's midpoint, so levels can be off by at most one
/// cell measure and no cell is ever split.
Field assign_by_weight(const Mesh& mesh, const Distribution& dist, const Field& w,
                       bool descending_values, RearrangeStats* stats) {
  const std::size_t n = mesh.cell_count();
  if (w.size() != n)
    throw std::invalid_argument("rearrange: weight field does not match mesh");
  if (dist.empty()) throw std::invalid_argument("rearrange: empty distribution");
  const double area = mesh.domain_area();
  if (std::abs(dist.total_measure() - area) > 1e-9 * area)
    throw std::invalid_argument("rearrange: distribution does not cover the mesh");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (w[a] != w[b]) return w[a] < w[b];
    return a < b;
  });

  std::vector<DistributionLevel> seq = dist.levels();  // descending
  if (!descending_values) std::reverse(seq.begin(), seq.end());

  Field out(n, 0.0);
  std::vector<double> realized(seq.size(), 0.0);
  double cum = 0.0;
  double level_end = seq[0].measure;
  std::size_t li = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t cell = order[k];
    const double m = mesh.measure[cell];
    const double mid = cum + 0.5 * m;
    while (mid >= level_end && li + 1 < seq.size()) {
      ++li;
      level_end += seq[li].measure;
    }
    out[cell] = seq[li].value;
    realized[li] += m;
    cum += m;
  }

  if (stats) {
    std::size_t tied = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const bool prev = k > 0 && w[order[k - 1]] == w[order[k]];
      const bool next = k + 1 < n && w[order[k + 1]] == w[order[k]];
      if (prev || next) ++tied;
    }
    double err = 0.0, cum_real = 0.0, cum_target = 0.0;
    for (std::size_t l = 0; l < seq.size(); ++l) {
      cum_real += realized[l];
      cum_target += seq[l].measure;
      err = std::max(err, std::abs(cum_real - cum_target));
    }
    stats->tied_cells = tied;
    stats->measure_error = err;
  }
  return out;
}

void require_two_level(const Distribution& dist, const char* what) {
  if (!dist.two_level())
    throw std::invalid_argument(std::string(what) +
                                ": distribution must be a characteristic class "
                                "(one positive level over zero)");
}

void require_disk(const Mesh& mesh, const char* what) {
  if (!mesh.is_disk())
    throw std::invalid_argument(std::string(what) + ": disk meshes only");
}

Field radial_center_weight(const Mesh& mesh) {
  Field w(mesh.cell_count());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = mesh.center_weight(i);
  return w;
}

}  // namespace

Field opposite_rearrangement(const Mesh& mesh, const Distribution& dist, const Field& w,
                             RearrangeStats* stats) {
  return assign_by_weight(mesh, dist, w, /*descending_values=*/true, stats);
}

Field similar_rearrangement(const Mesh& mesh, const Distribution& dist, const Field& w,
                            RearrangeStats* stats) {
  return assign_by_weight(mesh, dist, w, /*descending_values=*/false, stats);
}

Field bathtub_min(const Mesh& mesh, const Distribution& dist, const Field& w,
                  RearrangeStats* stats) {
  require_two_level(dist, "bathtub_min");
  return assign_by_weight(mesh, dist, w, /*descending_values=*/true, stats);
}

Field bathtub_max(const Mesh& mesh, const Distribution& dist, const Field& w,
                  RearrangeStats* stats) {
  require_two_level(dist, "bathtub_max");
  return assign_by_weight(mesh, dist, w, /*descending_values=*/false, stats);
}

Field schwarz_increasing(const Mesh& mesh, const Distribution& dist,
                         RearrangeStats* stats) {
  require_disk(mesh, "schwarz_increasing");
  return assign_by_weight(mesh, dist, radial_center_weight(mesh),
                          /*descending_values=*/true, stats);
}

Field schwarz_decreasing(const Mesh& mesh, const Distribution& dist,
                         RearrangeStats* stats) {
  require_disk(mesh, "schwarz_decreasing");
  return assign_by_weight(mesh, dist, radial_center_weight(mesh),
                          /*descending_values=*/false, stats);
}

}  // namespace qdot
