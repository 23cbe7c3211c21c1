// SPDX-License-Identifier: Apache-2.0
#include "qdot/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdot/mesh.hpp"

namespace qdot {

Distribution::Distribution(std::vector<DistributionLevel> levels) {
  for (const auto& l : levels) {
    if (!(l.measure >= 0.0))
      throw std::invalid_argument("Distribution: level measures must be non-negative");
    if (!std::isfinite(l.value))
      throw std::invalid_argument("Distribution: level values must be finite");
  }
  std::sort(levels.begin(), levels.end(),
            [](const DistributionLevel& a, const DistributionLevel& b) {
              return a.value > b.value;
            });
  for (const auto& l : levels) {
    if (l.measure == 0.0) continue;
    if (!levels_.empty() && levels_.back().value == l.value) {
      levels_.back().measure += l.measure;
    } else {
      levels_.push_back(l);
    }
    total_measure_ += l.measure;
  }
}

double Distribution::max_value() const { return levels_.empty() ? 0.0 : levels_.front().value; }

double Distribution::min_value() const { return levels_.empty() ? 0.0 : levels_.back().value; }

double Distribution::support_measure() const {
  double s = 0.0;
  for (const auto& l : levels_)
    if (l.value > 0.0) s += l.measure;
  return s;
}

bool Distribution::two_level() const {
  if (levels_.size() <= 1) return true;
  return levels_.size() == 2 && levels_.back().value == 0.0;
}

Distribution distribution_of(const Mesh& mesh, const Field& f) {
  if (f.size() != mesh.cell_count())
    throw std::invalid_argument("distribution_of: field does not match mesh");
  std::vector<DistributionLevel> levels(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) levels[i] = {f[i], mesh.measure[i]};
  return Distribution(std::move(levels));
}

namespace {

/// Sweeps both descending level lists through the union of value thresholds
/// (thresholds closer than val_tol are merged) and compares the two
/// distribution functions after every threshold.
bool distributions_agree(const std::vector<DistributionLevel>& a,
                         const std::vector<DistributionLevel>& b, double val_tol,
                         double measure_tol) {
  std::size_t i = 0, j = 0;
  double cum_a = 0.0, cum_b = 0.0;
  while (i < a.size() || j < b.size()) {
    double v;
    if (i < a.size() && j < b.size())
      v = std::max(a[i].value, b[j].value);
    else
      v = (i < a.size()) ? a[i].value : b[j].value;
    while (i < a.size() && a[i].value >= v - val_tol) cum_a += a[i++].measure;
    while (j < b.size() && b[j].value >= v - val_tol) cum_b += b[j++].measure;
    if (std::abs(cum_a - cum_b) > measure_tol) return false;
  }
  return true;
}

}  // namespace

bool is_rearrangement(const Mesh& mesh, const Field& f, const Field& g, double tol) {
  const Distribution df = distribution_of(mesh, f);
  const Distribution dg = distribution_of(mesh, g);
  // Uniform meshes admit exact discrete rearrangement, so only `tol` slack
  // applies; non-uniform meshes are compared up to one maximal cell measure.
  double mmin = mesh.measure.empty() ? 0.0 : mesh.measure[0];
  double mmax = mmin;
  for (double m : mesh.measure) {
    mmin = std::min(mmin, m);
    mmax = std::max(mmax, m);
  }
  const bool uniform = mmin == mmax;
  const double measure_tol = (uniform ? tol : std::max(tol, mmax)) * (1.0 + 1e-12);
  return distributions_agree(df.levels(), dg.levels(), tol, measure_tol);
}

Field make_annular_characteristic(const Mesh& mesh, double height, double inner_r,
                                  double outer_r) {
  if (!mesh.is_disk())
    throw std::invalid_argument("make_annular_characteristic: disk meshes only");
  if (!(inner_r >= 0.0) || !(inner_r < outer_r) || !(outer_r <= mesh.radius * (1.0 + 1e-12)))
    throw std::invalid_argument("make_annular_characteristic: need 0 <= inner_r < outer_r <= R");
  Field f(mesh.cell_count(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = mesh.coord1[i];
    if (r > inner_r && r <= outer_r) f[i] = height;
  }
  return f;
}

double tied_value_fraction(const Field& u, double tol) {
  if (u.empty()) return 0.0;
  Field sorted = u;
  std::sort(sorted.begin(), sorted.end());
  std::size_t tied = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const bool prev = i > 0 && sorted[i] - sorted[i - 1] <= tol;
    const bool next = i + 1 < sorted.size() && sorted[i + 1] - sorted[i] <= tol;
    if (prev || next) ++tied;
  }
  return static_cast<double>(tied) / static_cast<double>(sorted.size());
}

}  // namespace qdot
