#pragma once

#include <complex>
#include <vector>

namespace nugap {

// Real-coefficient polynomial in ascending coefficient order.
// The zero polynomial is stored as an empty coefficient vector; construction
// strips leading coefficients below 1e-14 of the largest magnitude so the
// stored leading coefficient is genuinely nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);
  explicit Polynomial(double constant);

  // Builds lead * prod(s - root_k). The root list must be closed under
  // conjugation (imaginary parts of the product are discarded after a
  // symmetry check).
  static Polynomial from_roots(const std::vector<std::complex<double>>& roots, double lead);

  bool is_zero() const { return c_.empty(); }
  // Degree of the trimmed polynomial; 0 for constants including zero.
  int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }
  const std::vector<double>& coefficients() const { return c_; }
  double coeff(int k) const;

  std::complex<double> operator()(std::complex<double> s) const;
  // Real evaluation path: a real argument yields a real value with the
  // imaginary part exactly zero by construction.
  double operator()(double x) const;

  Polynomial paraconjugate() const;  // p(-s)
  Polynomial derivative() const;
  Polynomial scaled(double factor) const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);

 private:
  std::vector<double> c_;
};

// Relative magnitude under which leading coefficients are stripped.
inline constexpr double kCoefficientTrimRel = 1e-14;

}  // namespace nugap
