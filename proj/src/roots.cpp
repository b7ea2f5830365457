#include "nugap/roots.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace nugap {

std::vector<std::complex<double>> polynomial_roots(const Polynomial& p) {
  const int n = p.degree();
  if (p.is_zero() || n < 1) throw std::invalid_argument("root finding needs degree >= 1");
  if (n > kMaxRootDegree)
    throw std::invalid_argument("root finding supports degree <= 8, got degree " +
                                std::to_string(n));

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  const double lead = p.leading();
  for (int k = 0; k < n; ++k) companion(k, n - 1) = -p.coeff(k) / lead;
  for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("companion eigenvalue iteration failed");

  const Polynomial dp = p.derivative();
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::complex<double> r = solver.eigenvalues()(k);
    const std::complex<double> slope = dp(r);
    if (std::abs(slope) > 0.0) {
      const std::complex<double> step = p(r) / slope;
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) r -= step;
    }
    roots[static_cast<std::size_t>(k)] = r;
  }
  return roots;
}

}  // namespace nugap
