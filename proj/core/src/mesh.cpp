// SPDX-License-Identifier: Apache-2.0
#include "qdot/mesh.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdot {

namespace {

constexpr double kPi = std::numbers::pi;

void check_field_size(const Mesh& mesh, const Field& f, const char* what) {
  if (f.size() != mesh.cell_count()) {
    throw std::invalid_argument(std::string(what) + ": field length " +
                                std::to_string(f.size()) + " does not match mesh with " +
                                std::to_string(mesh.cell_count()) + " cells");
  }
}

}  // namespace

std::string to_string(MeshKind kind) {
  switch (kind) {
    case MeshKind::disk_radial: return "disk_radial";
    case MeshKind::disk_polar: return "disk_polar";
    case MeshKind::rectangle: return "rectangle";
  }
  return "unknown";
}

double Mesh::domain_area() const {
  if (kind == MeshKind::rectangle) return side_a * side_b;
  return kPi * radius * radius;
}

double Mesh::max_cell_measure() const {
  double m = 0.0;
  for (double v : measure) m = std::max(m, v);
  return m;
}

double Mesh::center_weight(std::size_t cell) const {
  if (kind == MeshKind::rectangle) {
    const double dx = coord1[cell] - 0.5 * side_a;
    const double dy = coord2[cell] - 0.5 * side_b;
    const double half_diag = 0.5 * std::hypot(side_a, side_b);
    return half_diag - std::hypot(dx, dy);
  }
  return radius - coord1[cell];
}

void Mesh::apply_laplacian(const Field& u, Field& out) const {
  check_field_size(*this, u, "apply_laplacian");
  out.resize(u.size());
  weighted_laplacian.apply(u.data(), out.data());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= measure[i];
}

Mesh build_disk_radial(double R, std::size_t n) {
  if (!(R > 0.0)) throw std::invalid_argument("build_disk_radial: R must be positive");
  if (n < 8) throw std::invalid_argument("build_disk_radial: need at least 8 cells");

  Mesh mesh;
  mesh.kind = MeshKind::disk_radial;
  mesh.radius = R;
  mesh.n1 = n;
  mesh.n2 = 1;
  const double dr = R / static_cast<double>(n);
  mesh.coord1.resize(n);
  mesh.coord2.assign(n, 0.0);
  mesh.measure.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (static_cast<double>(i) + 0.5) * dr;
    mesh.coord1[i] = r;
    mesh.measure[i] = 2.0 * kPi * r * dr;
  }

  // Finite-volume form of -(u'' + u'/r): flux faces at i*dr, no flux through
  // the axis, Dirichlet value at r = R half a cell beyond the last center.
  SymBandsBuilder bld(n);
  const double c = 2.0 * kPi / dr;
  for (std::size_t i = 0; i < n; ++i) {
    const double f_in = static_cast<double>(i) * dr;
    double diag = c * f_in;
    if (i + 1 < n) {
      const double f_out = static_cast<double>(i + 1) * dr;
      diag += c * f_out;
      bld.add(i + 1, i, -c * f_out);
    } else {
      diag += 2.0 * c * R;  // boundary face, value 0 at distance dr/2
    }
    bld.add(i, i, diag);
  }
  mesh.weighted_laplacian = bld.build();
  return mesh;
}

Mesh build_disk_polar(double R, std::size_t n_r, std::size_t n_t) {
  if (!(R > 0.0)) throw std::invalid_argument("build_disk_polar: R must be positive");
  if (n_r < 8 || n_t < 8)
    throw std::invalid_argument("build_disk_polar: need at least 8 cells per direction");

  Mesh mesh;
  mesh.kind = MeshKind::disk_polar;
  mesh.radius = R;
  mesh.n1 = n_r;
  mesh.n2 = n_t;
  const double dr = R / static_cast<double>(n_r);
  const double dt = 2.0 * kPi / static_cast<double>(n_t);
  const std::size_t n = n_r * n_t;
  mesh.coord1.resize(n);
  mesh.coord2.resize(n);
  mesh.measure.resize(n);
  // r-major ordering keeps the bandwidth at n_t.
  for (std::size_t i = 0; i < n_r; ++i) {
    const double r = (static_cast<double>(i) + 0.5) * dr;
    for (std::size_t j = 0; j < n_t; ++j) {
      const std::size_t c = i * n_t + j;
      mesh.coord1[c] = r;
      mesh.coord2[c] = (static_cast<double>(j) + 0.5) * dt;
      mesh.measure[c] = r * dr * dt;
    }
  }

  SymBandsBuilder bld(n);
  for (std::size_t i = 0; i < n_r; ++i) {
    const double r = (static_cast<double>(i) + 0.5) * dr;
    const double f_in = static_cast<double>(i) * dr;
    const double radial_in = dt * f_in / dr;
    double radial_out;
    if (i + 1 < n_r) {
      radial_out = dt * static_cast<double>(i + 1) * dr / dr;
    } else {
      radial_out = 2.0 * dt * R / dr;  // Dirichlet face
    }
    const double angular = dr / (r * dt);
    for (std::size_t j = 0; j < n_t; ++j) {
      const std::size_t c = i * n_t + j;
      bld.add(c, c, radial_in + radial_out + 2.0 * angular);
      if (i + 1 < n_r) bld.add(c + n_t, c, -dt * static_cast<double>(i + 1));
      const std::size_t jn = (j + 1) % n_t;
      bld.add(i * n_t + jn, c, -angular);
    }
  }
  mesh.weighted_laplacian = bld.build();
  return mesh;
}

namespace detail {

Mesh assemble_rectangle(double a, double b, std::size_t nx, std::size_t ny) {
  Mesh mesh;
  mesh.kind = MeshKind::rectangle;
  mesh.side_a = a;
  mesh.side_b = b;
  mesh.n1 = nx;
  mesh.n2 = ny;
  const double dx = a / static_cast<double>(nx);
  const double dy = b / static_cast<double>(ny);
  const std::size_t n = nx * ny;
  mesh.coord1.resize(n);
  mesh.coord2.resize(n);
  mesh.measure.assign(n, dx * dy);

  // Order so the smaller direction varies fastest: the bandwidth of the
  // 5-point stencil is min(nx, ny).
  const bool x_fast = nx <= ny;
  const std::size_t fast = x_fast ? nx : ny;
  const std::size_t slow = x_fast ? ny : nx;
  auto cell = [&](std::size_t s, std::size_t f) { return s * fast + f; };

  for (std::size_t s = 0; s < slow; ++s) {
    for (std::size_t f = 0; f < fast; ++f) {
      const std::size_t ix = x_fast ? f : s;
      const std::size_t iy = x_fast ? s : f;
      const std::size_t c = cell(s, f);
      mesh.coord1[c] = (static_cast<double>(ix) + 0.5) * dx;
      mesh.coord2[c] = (static_cast<double>(iy) + 0.5) * dy;
    }
  }

  const double m = dx * dy;
  const double cx = m / (dx * dx);
  const double cy = m / (dy * dy);
  const double cf = x_fast ? cx : cy;
  const double cs = x_fast ? cy : cx;
  const std::size_t nf = fast, ns = slow;
  SymBandsBuilder bld(n);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t f = 0; f < nf; ++f) {
      const std::size_t c = cell(s, f);
      // Dirichlet ghost -u mirrors the half-cell boundary offset.
      double diag = 0.0;
      diag += (f == 0) ? 3.0 * cf : 2.0 * cf;
      if (f + 1 == nf) diag += cf;
      diag += (s == 0) ? 3.0 * cs : 2.0 * cs;
      if (s + 1 == ns) diag += cs;
      bld.add(c, c, diag);
      if (f + 1 < nf) bld.add(c + 1, c, -cf);
      if (s + 1 < ns) bld.add(c + nf, c, -cs);
    }
  }
  mesh.weighted_laplacian = bld.build();
  return mesh;
}

}  // namespace detail

Mesh build_rectangle(double a, double b, std::size_t nx, std::size_t ny) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("build_rectangle: sides must be positive");
  if (nx < 8 || ny < 8)
    throw std::invalid_argument("build_rectangle: need at least 8 cells per direction");
  return detail::assemble_rectangle(a, b, nx, ny);
}

double integrate(const Mesh& mesh, const Field& f) {
  check_field_size(mesh, f, "integrate");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * mesh.measure[i];
  return s;
}

double dirichlet_energy(const Mesh& mesh, const Field& u) {
  check_field_size(mesh, u, "dirichlet_energy");
  return mesh.weighted_laplacian.quadratic_form(u.data());
}

double inner(const Mesh& mesh, const Field& u, const Field& v) {
  check_field_size(mesh, u, "inner");
  check_field_size(mesh, v, "inner");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i] * mesh.measure[i];
  return s;
}

double l2_norm(const Mesh& mesh, const Field& u) { return std::sqrt(inner(mesh, u, u)); }

double l1_distance(const Mesh& mesh, const Field& u, const Field& v) {
  check_field_size(mesh, u, "l1_distance");
  check_field_size(mesh, v, "l1_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::abs(u[i] - v[i]) * mesh.measure[i];
  return s;
}

}  // namespace qdot
