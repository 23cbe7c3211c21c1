// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>

#include "qdot/field.hpp"
#include "qdot/linalg.hpp"

namespace qdot {

enum class MeshKind { disk_radial, disk_polar, rectangle };

std::string to_string(MeshKind kind);

/// Immutable discretized domain: cell centers, positive cell measures, and
/// the measure-weighted negative Dirichlet Laplacian  B = M L  (symmetric
/// positive definite). Grids are cell-centered everywhere so r = 0 is never
/// a node and the polar axis needs no special casing. All reductions run in
/// cell-index order so results are reproducible across runs.
class Mesh {
 public:
  MeshKind kind = MeshKind::rectangle;

  // Geometry. Disk kinds use radius; rectangle uses side_a x side_b. nm.
  double radius = 0.0;
  double side_a = 0.0;
  double side_b = 0.0;

  // Resolution per direction. disk_radial: n1 radial cells. disk_polar:
  // n1 radial x n2 angular. rectangle: n1 x n2 in (x, y).
  std::size_t n1 = 0;
  std::size_t n2 = 0;

  // Per-cell centers: (r, 0), (r, theta) or (x, y).
  std::vector<double> coord1;
  std::vector<double> coord2;
  std::vector<double> measure;

  /// B = M L with L the negative Dirichlet Laplacian. SPD.
  SymBands weighted_laplacian;

  std::size_t cell_count() const { return measure.size(); }
  bool is_disk() const { return kind != MeshKind::rectangle; }

  /// Analytic |Omega|.
  double domain_area() const;
  double max_cell_measure() const;

  /// Distance of a cell center from the boundary-farthest point (disk
  /// center / rectangle centroid). Strictly radially decreasing weight on
  /// disks; used as the canonical monotone seed.
  double center_weight(std::size_t cell) const;

  /// out = L u = M^{-1} (B u).
  void apply_laplacian(const Field& u, Field& out) const;
};

/// Cell-centered radial grid r_i = (i+1/2) R/n with annular measures
/// 2 pi r_i dr; discretizes -(u'' + u'/r) with a no-flux axis and
/// Dirichlet u(R) = 0.
Mesh build_disk_radial(double R, std::size_t n);

/// Tensor (r, theta) grid, polar Laplacian, periodic in theta, Dirichlet
/// at r = R.
Mesh build_disk_polar(double R, std::size_t n_r, std::size_t n_t);

/// Cell-centered 5-point Dirichlet Laplacian, measure dx dy per cell.
Mesh build_rectangle(double a, double b, std::size_t nx, std::size_t ny);

namespace detail {
/// Assembly without the public size validation; test toys use this to build
/// degenerate strips the public builders reject.
Mesh assemble_rectangle(double a, double b, std::size_t nx, std::size_t ny);
}  // namespace detail

/// sum_i f_i measure_i, accumulated in cell-index order.
double integrate(const Mesh& mesh, const Field& f);

/// <u, L u> in the measure-weighted inner product: the operator-consistent
/// discrete ||grad u||^2. Always >= 0, zero iff u == 0.
double dirichlet_energy(const Mesh& mesh, const Field& u);

/// Measure-weighted inner product and L2 norm.
double inner(const Mesh& mesh, const Field& u, const Field& v);
double l2_norm(const Mesh& mesh, const Field& u);

/// Measure-weighted L1 distance between two fields.
double l1_distance(const Mesh& mesh, const Field& u, const Field& v);

}  // namespace qdot
