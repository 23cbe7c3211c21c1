// SPDX-License-Identifier: Apache-2.0
#include "qdot/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "qdot/errors.hpp"

namespace qdot {

void SymBands::apply(const double* x, double* y) const {
  std::memset(y, 0, n * sizeof(double));
  for (std::size_t b = 0; b < offsets.size(); ++b) {
    const std::size_t off = offsets[b];
    const double* band = bands[b].data();
    if (off == 0) {
      for (std::size_t i = 0; i < n; ++i) y[i] += band[i] * x[i];
    } else {
      const std::size_t len = n - off;
      for (std::size_t i = 0; i < len; ++i) {
        y[i + off] += band[i] * x[i];
        y[i] += band[i] * x[i + off];
      }
    }
  }
}

double SymBands::quadratic_form(const double* x) const {
  double s = 0.0;
  for (std::size_t b = 0; b < offsets.size(); ++b) {
    const std::size_t off = offsets[b];
    const double* band = bands[b].data();
    if (off == 0) {
      for (std::size_t i = 0; i < n; ++i) s += band[i] * x[i] * x[i];
    } else {
      const std::size_t len = n - off;
      double t = 0.0;
      for (std::size_t i = 0; i < len; ++i) t += band[i] * x[i] * x[i + off];
      s += 2.0 * t;
    }
  }
  return s;
}

void SymBandsBuilder::add(std::size_t i, std::size_t j, double v) {
  if (i < j) std::swap(i, j);
  const std::size_t off = i - j;
  auto it = std::find(offsets_.begin(), offsets_.end(), off);
  std::size_t b;
  if (it == offsets_.end()) {
    b = offsets_.size();
    offsets_.push_back(off);
    bands_.emplace_back(n_ - off, 0.0);
  } else {
    b = static_cast<std::size_t>(it - offsets_.begin());
  }
  bands_[b][j] += v;
}

SymBands SymBandsBuilder::build() {
  // sort bands by offset
  std::vector<std::size_t> order(offsets_.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return offsets_[a] < offsets_[b]; });
  SymBands out;
  out.n = n_;
  for (std::size_t k : order) {
    out.offsets.push_back(offsets_[k]);
    out.bands.push_back(std::move(bands_[k]));
  }
  return out;
}

BandedCholesky::BandedCholesky(const SymBands& base, double scale,
                               const std::vector<double>& extra_diag)
    : n_(base.n), bw_(base.bandwidth()), a_(n_ * (bw_ + 1), 0.0) {
  const std::size_t stride = bw_ + 1;
  for (std::size_t b = 0; b < base.offsets.size(); ++b) {
    const std::size_t off = base.offsets[b];
    const auto& band = base.bands[b];
    for (std::size_t j = 0; j + off < n_; ++j) a_[j * stride + off] = scale * band[j];
  }
  for (std::size_t j = 0; j < n_; ++j) a_[j * stride] += extra_diag[j];
  factor();
}

void BandedCholesky::factor() {
  const std::size_t stride = bw_ + 1;
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t kmin = (j > bw_) ? j - bw_ : 0;
    double* colj = &a_[j * stride];
    for (std::size_t k = kmin; k < j; ++k) {
      const double ljk = a_[k * stride + (j - k)];
      if (ljk == 0.0) continue;
      const std::size_t imax = std::min(k + bw_, n_ - 1);
      const double* colk = &a_[k * stride + (j - k)];
      const std::size_t len = imax - j;
      for (std::size_t t = 0; t <= len; ++t) colj[t] -= ljk * colk[t];
    }
    const double pivot = colj[0];
    if (!(pivot > 0.0)) {
      throw SolverError("banded Cholesky: matrix not positive definite", pivot);
    }
    const double d = std::sqrt(pivot);
    colj[0] = d;
    const std::size_t imax = std::min(j + bw_, n_ - 1);
    const double inv = 1.0 / d;
    for (std::size_t t = 1; t <= imax - j; ++t) colj[t] *= inv;
  }
}

void BandedCholesky::solve(std::vector<double>& rhs) const {
  const std::size_t stride = bw_ + 1;
  // forward: L y = rhs
  for (std::size_t k = 0; k < n_; ++k) {
    const double* col = &a_[k * stride];
    const double xk = rhs[k] / col[0];
    rhs[k] = xk;
    const std::size_t imax = std::min(k + bw_, n_ - 1);
    for (std::size_t t = 1; t <= imax - k; ++t) rhs[k + t] -= col[t] * xk;
  }
  // backward: L^T x = y
  for (std::size_t k = n_; k-- > 0;) {
    const double* col = &a_[k * stride];
    double s = rhs[k];
    const std::size_t imax = std::min(k + bw_, n_ - 1);
    for (std::size_t t = 1; t <= imax - k; ++t) s -= col[t] * rhs[k + t];
    rhs[k] = s / col[0];
  }
}

std::size_t pcg_solve(std::size_t n,
                      const std::function<void(const double*, double*)>& apply,
                      const std::vector<double>& diag, const std::vector<double>& rhs,
                      std::vector<double>& x, double rel_tol, std::size_t max_iters) {
  std::vector<double> r(n), z(n), p(n), Ap(n);
  x.assign(n, 0.0);
  r = rhs;
  double bnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) bnorm += rhs[i] * rhs[i];
  bnorm = std::sqrt(bnorm);
  if (bnorm == 0.0) return 0;

  for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = 0.0;
  for (std::size_t i = 0; i < n; ++i) rz += r[i] * z[i];

  for (std::size_t it = 1; it <= max_iters; ++it) {
    apply(p.data(), Ap.data());
    double pAp = 0.0;
    for (std::size_t i = 0; i < n; ++i) pAp += p[i] * Ap[i];
    if (!(pAp > 0.0)) throw SolverError("pcg: operator not positive definite", pAp);
    const double alpha = rz / pAp;
    double rnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
      rnorm += r[i] * r[i];
    }
    if (std::sqrt(rnorm) <= rel_tol * bnorm) return it;
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    double rz_next = 0.0;
    for (std::size_t i = 0; i < n; ++i) rz_next += r[i] * z[i];
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  double rnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) rnorm += r[i] * r[i];
  throw SolverError("pcg: no convergence", std::sqrt(rnorm) / bnorm);
}

}  // namespace qdot
