#pragma once

#include <complex>

#include "nugap/polynomial.hpp"

namespace nugap {

// Pole floor: evaluation refuses denominators with modulus below this.
inline constexpr double kPoleFloor = 1e-300;

// Scalar plant P(s) = exp(-s*delay) * num(s) / den(s) on the right half
// plane. Construction enforces: delay >= 0 and finite, den not identically
// zero, deg num <= deg den, and num/den coprime (no shared root within
// 1e-8*(1+|root|); checked when both degrees are within root-finder range).
// A zero numerator is admitted only with a constant denominator.
struct DelayRationalPlant {
  DelayRationalPlant(double delay, Polynomial num, Polynomial den);

  double delay;
  Polynomial num;
  Polynomial den;
};

// P(s). Throws EvaluationError at non-finite s or |den(s)| < kPoleFloor.
std::complex<double> plant_eval(const DelayRationalPlant& plant, std::complex<double> s);

}  // namespace nugap
