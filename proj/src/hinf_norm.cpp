#include "nugap/hinf_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "nugap/errors.hpp"

namespace nugap {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

double checked_sigma(const BoundaryFunction& F, double omega) {
  const Eigen::MatrixXcd m = F.eval_matrix({0.0, omega});
  if (!m.allFinite()) {
    std::ostringstream msg;
    msg << "non-finite sample at omega = " << omega;
    throw EvaluationError(msg.str());
  }
  return sigma_max(m);
}

// Golden-section maximization of sigma(omega) on [a, b]; every evaluation is
// appended to the trace.
double golden_max(const BoundaryFunction& F, double a, double b, double tol,
                  std::vector<std::pair<double, double>>& trace) {
  auto ev = [&](double w) {
    const double s = checked_sigma(F, w);
    trace.emplace_back(w, s);
    return s;
  };
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = ev(x1);
  double f2 = ev(x2);
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = ev(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = ev(x2);
    }
  }
  return std::max(f1, f2);
}

}  // namespace

double sigma_max(const Eigen::MatrixXcd& M) {
  if (M.size() == 0) throw std::invalid_argument("sigma_max of an empty matrix");
  if (M.rows() == 1 && M.cols() == 1) return std::abs(M(0, 0));
  const Eigen::MatrixXcd gram = M.adjoint() * M;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  const double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

NormSearchResult hinf_norm(const BoundaryFunction& F, const NormSearchOptions& options) {
  if (F.coordinate() != Coordinate::halfplane)
    throw std::invalid_argument("norm search expects a half-plane boundary function");
  if (!(options.omega_min > 0.0) || !(options.omega_max > options.omega_min))
    throw std::invalid_argument("norm search needs 0 < omega_min < omega_max");
  if (options.coarse_n < 2) throw std::invalid_argument("norm search needs coarse_n >= 2");

  std::vector<double> omegas;
  omegas.push_back(0.0);
  const double ratio = options.omega_max / options.omega_min;
  for (int k = 0; k < options.coarse_n; ++k) {
    const double w =
        options.omega_min * std::pow(ratio, static_cast<double>(k) / (options.coarse_n - 1));
    omegas.push_back(w);
    if (!F.real_symmetric) omegas.push_back(-w);
  }
  std::sort(omegas.begin(), omegas.end());

  NormSearchResult out;
  out.trace.reserve(omegas.size());
  std::vector<double> sigmas(omegas.size());
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    sigmas[k] = checked_sigma(F, omegas[k]);
    out.trace.emplace_back(omegas[k], sigmas[k]);
  }

  // Local maxima of the coarse scan (one-sided at the ends), deepest first.
  std::vector<std::size_t> peaks;
  const std::size_t n = omegas.size();
  for (std::size_t k = 0; k < n; ++k) {
    const bool left_ok = (k == 0) || sigmas[k] >= sigmas[k - 1];
    const bool right_ok = (k + 1 == n) || sigmas[k] >= sigmas[k + 1];
    if (left_ok && right_ok) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(),
            [&](std::size_t a, std::size_t b) { return sigmas[a] > sigmas[b]; });
  if (static_cast<int>(peaks.size()) > options.max_brackets)
    peaks.resize(static_cast<std::size_t>(options.max_brackets));

  for (std::size_t k : peaks) {
    const double a = omegas[k == 0 ? 0 : k - 1];
    const double b = omegas[k + 1 == n ? n - 1 : k + 1];
    if (!(b > a)) continue;
    const double tol = options.rel_tol * std::max({std::abs(a), std::abs(b), 1.0});
    golden_max(F, a, b, tol, out.trace);
    out.refined = true;
  }

  std::sort(out.trace.begin(), out.trace.end());
  const auto best = std::max_element(
      out.trace.begin(), out.trace.end(),
      [](const auto& p, const auto& q) { return p.second < q.second; });
  out.value = best->second;
  out.argmax_omega = best->first;

  if (F.tail_limit && *F.tail_limit > out.value) {
    out.value = *F.tail_limit;
    out.argmax_omega = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace nugap
