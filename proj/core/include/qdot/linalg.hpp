// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qdot {

/// Symmetric sparse matrix stored as a handful of sub-diagonals.
/// offsets[0] == 0 is the main diagonal; band k holds B(i+offset, i) for
/// i in [0, n-offset). Only the lower triangle is stored.
struct SymBands {
  std::size_t n = 0;
  std::vector<std::size_t> offsets;
  std::vector<std::vector<double>> bands;

  std::size_t bandwidth() const { return offsets.empty() ? 0 : offsets.back(); }

  /// y = B x (both triangles), deterministic accumulation order.
  void apply(const double* x, double* y) const;
  /// x^T B x, deterministic accumulation order.
  double quadratic_form(const double* x) const;
};

/// Incremental assembly helper for SymBands.
class SymBandsBuilder {
 public:
  explicit SymBandsBuilder(std::size_t n) : n_(n) {}
  /// Accumulate B(i,j) += v (i >= j).
  void add(std::size_t i, std::size_t j, double v);
  SymBands build();

 private:
  std::size_t n_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<double>> bands_;
};

/// In-place banded Cholesky (L L^T) of  scale * B + diag(extra).
/// Throws SolverError when the matrix is not positive definite.
class BandedCholesky {
 public:
  BandedCholesky(const SymBands& base, double scale, const std::vector<double>& extra_diag);

  /// Overwrites rhs with the solution.
  void solve(std::vector<double>& rhs) const;

  std::size_t bytes() const { return a_.size() * sizeof(double); }

  /// Storage the factorization would need, before committing to it.
  static std::size_t estimate_bytes(const SymBands& base) {
    return base.n * (base.bandwidth() + 1) * sizeof(double);
  }

 private:
  std::size_t n_;
  std::size_t bw_;
  std::vector<double> a_;  // column-packed lower bands, a_[j*(bw+1)+off]

  void factor();
};

/// Jacobi-preconditioned conjugate gradients for an SPD operator given as a
/// matrix-free apply. Returns iterations used; throws SolverError when the
/// relative residual target is not met.
std::size_t pcg_solve(std::size_t n,
                      const std::function<void(const double*, double*)>& apply,
                      const std::vector<double>& diag, const std::vector<double>& rhs,
                      std::vector<double>& x, double rel_tol, std::size_t max_iters);

}  // namespace qdot
