#include "nugap/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nugap {

namespace {

void trim(std::vector<double>& c) {
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) {
    c.clear();
    return;
  }
  while (!c.empty() && std::abs(c.back()) <= kCoefficientTrimRel * scale) c.pop_back();
}

}  // namespace

Polynomial::Polynomial(std::vector<double> ascending) : c_(std::move(ascending)) {
  for (double v : c_) {
    if (!std::isfinite(v)) throw std::invalid_argument("polynomial coefficient not finite");
  }
  trim(c_);
}

Polynomial::Polynomial(double constant) : Polynomial(std::vector<double>{constant}) {}

Polynomial Polynomial::from_roots(const std::vector<std::complex<double>>& roots, double lead) {
  std::vector<std::complex<double>> c{{1.0, 0.0}};
  for (const auto& r : roots) {
    c.push_back({0.0, 0.0});
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  std::vector<double> real_c(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (std::abs(c[k].imag()) > 1e-8 * (1.0 + scale))
      throw std::invalid_argument("root list is not closed under conjugation");
    real_c[k] = c[k].real() * lead;
  }
  return Polynomial(std::move(real_c));
}

double Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0.0;
  return c_[static_cast<std::size_t>(k)];
}

std::complex<double> Polynomial::operator()(std::complex<double> s) const {
  std::complex<double> acc{0.0, 0.0};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::paraconjugate() const {
  std::vector<double> c(c_);
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<double> c(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) c[k - 1] = c_[k] * static_cast<double>(k);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(double factor) const {
  std::vector<double> c(c_);
  for (double& v : c) v *= factor;
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k < a.c_.size()) c[k] += a.c_[k];
    if (k < b.c_.size()) c[k] += b.c_[k];
  }
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + b.scaled(-1.0);
}

}  // namespace nugap
