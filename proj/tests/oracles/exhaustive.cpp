// SPDX-License-Identifier: Apache-2.0
#include "exhaustive.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qdot::test {

PermutationExtrema permutation_extrema(const Mesh& mesh, const Field& f, const Field& w) {
  if (f.size() > 9) throw std::invalid_argument("permutation_extrema: too many cells");
  Field perm = f;
  std::sort(perm.begin(), perm.end());
  PermutationExtrema out{std::numeric_limits<double>::infinity(),
                         -std::numeric_limits<double>::infinity(),
                         {},
                         {}};
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) s += perm[i] * w[i] * mesh.measure[i];
    if (s < out.min) {
      out.min = s;
      out.argmin = perm;
    }
    if (s > out.max) {
      out.max = s;
      out.argmax = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  // iterative combinations
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return out;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
}

SupportExtrema support_extrema(const Mesh& mesh, const Field& w, double beta,
                               std::size_t k) {
  SupportExtrema out{std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity(),
                     {},
                     {}};
  for (const auto& s : k_subsets(w.size(), k)) {
    double v = 0.0;
    for (std::size_t i : s) v += beta * w[i] * mesh.measure[i];
    if (v < out.min) {
      out.min = v;
      out.argmin = s;
    }
    if (v > out.max) {
      out.max = v;
      out.argmax = s;
    }
  }
  return out;
}

}  // namespace qdot::test
