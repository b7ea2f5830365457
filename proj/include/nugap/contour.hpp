#pragma once

#include <complex>
#include <vector>

namespace nugap {

// phi(z) = (1+z)/(1-z), the disk-to-half-plane transport. Throws
// EvaluationError at z = 1 (within 1e-300).
std::complex<double> mobius_to_halfplane(std::complex<double> z);

// n equally spaced points on the circle of radius r, starting at angle 0,
// counterclockwise: z_k = r * exp(2*pi*i*k/n). Requires 0 < r < 1, n >= 1.
std::vector<std::complex<double>> circle_samples(double r, long n);

}  // namespace nugap
