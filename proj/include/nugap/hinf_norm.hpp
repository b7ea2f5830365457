#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "nugap/boundary_function.hpp"

namespace nugap {

// Largest singular value: square root of the largest eigenvalue of M*M.
double sigma_max(const Eigen::MatrixXcd& M);

struct NormSearchOptions {
  double omega_min = 1e-4;  // smallest nonzero |omega| of the coarse grid
  double omega_max = 1e6;
  int coarse_n = 256;       // log-spaced points per sign
  double rel_tol = 1e-10;   // golden-section width target in omega
  int max_brackets = 8;
};

struct NormSearchResult {
  double value = 0.0;
  double argmax_omega = 0.0;  // +inf when the high-frequency tail attains the sup
  bool refined = false;
  // Every evaluated (omega, sigma_max) pair, coarse and refined, sorted by
  // omega. The reported value is the maximum of this trace and the tail.
  std::vector<std::pair<double, double>> trace;
};

// Boundary supremum of sigma_max(F(i*omega)): coarse log-spaced scan (plus
// omega = 0), golden-section refinement of the best local maxima, and the
// analytic |omega| -> inf limit when the function carries one. Functions
// flagged real_symmetric are scanned on omega >= 0 only. Throws
// EvaluationError on non-finite samples.
NormSearchResult hinf_norm(const BoundaryFunction& F, const NormSearchOptions& options = {});

}  // namespace nugap
