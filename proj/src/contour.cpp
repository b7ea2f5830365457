#include "nugap/contour.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nugap/errors.hpp"

namespace nugap {

std::complex<double> mobius_to_halfplane(std::complex<double> z) {
  const std::complex<double> denom = 1.0 - z;
  if (std::abs(denom) < 1e-300)
    throw EvaluationError("Möbius transport is singular at z = 1");
  return (1.0 + z) / denom;
}

std::vector<std::complex<double>> circle_samples(double r, long n) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("circle radius must be inside (0, 1)");
  if (n < 1) throw std::invalid_argument("circle sample count must be >= 1");
  std::vector<std::complex<double>> pts(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    pts[static_cast<std::size_t>(k)] = std::polar(r, theta);
  }
  return pts;
}

}  // namespace nugap
