// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qdot {

/// Iterative solver failed to converge; carries the last residual seen.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& msg, double last_residual = -1.0)
      : std::runtime_error(msg), last_residual_(last_residual) {}

  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

/// The scalar equation for the ground-state energy has no root in the
/// admissible interval: the standing hypotheses on the potentials fail.
class ConditionViolated : public SolverError {
 public:
  explicit ConditionViolated(const std::string& msg) : SolverError(msg) {}
};

}  // namespace qdot
