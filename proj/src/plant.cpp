#include "nugap/plant.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nugap/errors.hpp"
#include "nugap/roots.hpp"

namespace nugap {

DelayRationalPlant::DelayRationalPlant(double delay_in, Polynomial num_in, Polynomial den_in)
    : delay(delay_in), num(std::move(num_in)), den(std::move(den_in)) {
  if (!std::isfinite(delay) || delay < 0.0)
    throw std::invalid_argument("plant field 'delay' must be finite and >= 0");
  if (den.is_zero()) throw std::invalid_argument("plant field 'den' must not be identically zero");
  if (num.is_zero()) {
    if (den.degree() > 0)
      throw std::invalid_argument(
          "zero plant needs a constant 'den'; a zero 'num' over a nonconstant denominator is not "
          "coprime");
    return;
  }
  if (num.degree() > den.degree())
    throw std::invalid_argument("plant must be proper: deg 'num' <= deg 'den'");

  // Shared-root check; only runnable within root-finder range. Factorization
  // refuses higher degrees anyway.
  if (num.degree() >= 1 && den.degree() >= 1 && num.degree() <= kMaxRootDegree &&
      den.degree() <= kMaxRootDegree) {
    const auto zn = polynomial_roots(num);
    const auto zd = polynomial_roots(den);
    for (const auto& a : zn) {
      for (const auto& b : zd) {
        if (std::abs(a - b) <= 1e-8 * (1.0 + std::abs(a))) {
          std::ostringstream msg;
          msg << "plant fields 'num' and 'den' share a root near s = " << a.real();
          if (std::abs(a.imag()) > 0) msg << (a.imag() < 0 ? " - " : " + ")
                                          << std::abs(a.imag()) << "i";
          throw std::invalid_argument(msg.str());
        }
      }
    }
  }
}

std::complex<double> plant_eval(const DelayRationalPlant& plant, std::complex<double> s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw EvaluationError("plant evaluation point must be finite");
  const std::complex<double> den = plant.den(s);
  if (std::abs(den) < kPoleFloor)
    throw EvaluationError("plant evaluation hit a pole: |den(s)| under the floor");
  std::complex<double> value = plant.num(s) / den;
  if (plant.delay > 0.0) value *= std::exp(-s * plant.delay);
  return value;
}

}  // namespace nugap
