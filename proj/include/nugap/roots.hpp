#pragma once

#include <complex>
#include <vector>

#include "nugap/polynomial.hpp"

namespace nugap {

// Largest rational degree the root-based machinery accepts. Higher degrees
// are refused with a clear error instead of being attempted with eroding
// accuracy.
inline constexpr int kMaxRootDegree = 8;

// All complex roots of p, via the eigenvalues of the monic companion matrix,
// each polished with one Newton step. Requires 1 <= degree <= kMaxRootDegree.
std::vector<std::complex<double>> polynomial_roots(const Polynomial& p);

}  // namespace nugap
