#include "nugap/ncf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nugap/contour.hpp"
#include "nugap/errors.hpp"
#include "nugap/hinf_norm.hpp"
#include "nugap/roots.hpp"

namespace nugap {

Polynomial para_hermitian_sum(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() && q.is_zero())
    throw std::invalid_argument("para-hermitian sum of two zero polynomials");
  return p * p.paraconjugate() + q * q.paraconjugate();
}

std::vector<double> default_omega_grid(int points, double omega_min, double omega_max) {
  if (points < 2 || !(omega_min > 0.0) || !(omega_max > omega_min))
    throw std::invalid_argument("omega grid needs points >= 2 and 0 < omega_min < omega_max");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points) + 1);
  grid.push_back(0.0);
  const double lmin = std::log(omega_min), lmax = std::log(omega_max);
  for (int k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(points - 1);
    grid.push_back(std::exp(lmin + t * (lmax - lmin)));
  }
  return grid;
}

namespace {

// r(i w) as a real number, exploiting evenness: r(i w) = e(w^2) where e
// collects the even coefficients with alternating signs.
double axis_value(const Polynomial& r, double omega) {
  const double u = omega * omega;
  double acc = 0.0;
  for (int k = r.degree() / 2; k >= 0; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    acc = acc * u + sign * r.coeff(2 * k);
  }
  return acc;
}

}  // namespace

SpectralFactorizationResult spectral_factor(const Polynomial& r) {
  if (r.is_zero()) throw FactorizationError("spectral factorization of the zero polynomial");
  double scale = 0.0;
  for (double c : r.coefficients()) scale = std::max(scale, std::abs(c));
  for (int k = 1; k <= r.degree(); k += 2) {
    if (std::abs(r.coeff(k)) > 1e-12 * scale)
      throw FactorizationError("spectral factorization needs an even polynomial: r(-s) = r(s)");
  }
  const int deg = r.degree();
  if (deg % 2 != 0) throw FactorizationError("even polynomial with odd degree after trimming");
  const int n = deg / 2;
  if (n > kMaxRootDegree)
    throw FactorizationError("spectral factorization supports rational degree <= 8");

  // Axis positivity screen; catches indefiniteness that the root tests miss.
  for (double omega : default_omega_grid(400, 1e-4, 1e8)) {
    if (!(axis_value(r, omega) > 0.0)) {
      std::ostringstream msg;
      msg << "para-hermitian sum is not positive on the axis: r(i*" << omega
          << ") = " << axis_value(r, omega);
      throw FactorizationError(msg.str());
    }
  }

  SpectralFactorizationResult out;
  if (n == 0) {
    out.factor = Polynomial(std::sqrt(r.coeff(0)));
    out.residual = 0.0;
    return out;
  }

  const auto all_roots = polynomial_roots(r);
  std::vector<std::complex<double>> stable;
  for (const auto& root : all_roots) {
    if (std::abs(root.real()) <= 1e-8 * (1.0 + std::abs(root))) {
      std::ostringstream msg;
      msg << "spectral factorization found a root on the imaginary axis near "
          << root.real() << " + " << root.imag() << "i";
      throw FactorizationError(msg.str());
    }
    if (root.real() < 0.0) stable.push_back(root);
  }
  if (static_cast<int>(stable.size()) != n)
    throw FactorizationError("plus/minus root pairing failed: expected half the spectrum in the "
                             "open left half plane");

  // |lead(d)|^2 = |lead(r)|; the positive square root keeps d's leading
  // coefficient positive.
  const double lead = std::sqrt(std::abs(r.leading()));
  out.factor = Polynomial::from_roots(stable, lead);
  out.roots = std::move(stable);

  double residual = 0.0;
  for (double omega : default_omega_grid(400, 1e-4, 1e8)) {
    const double want = axis_value(r, omega);
    const double have = std::norm(out.factor(std::complex<double>(0.0, omega)));
    residual = std::max(residual, std::abs(have - want) / (1.0 + std::abs(want)));
  }
  out.residual = residual;
  if (!(residual <= kSpectralResidualTol)) {
    std::ostringstream msg;
    msg << "spectral factor residual " << residual << " exceeds " << kSpectralResidualTol;
    throw FactorizationError(msg.str());
  }
  return out;
}

namespace {

BoundaryFunction siso_factor_function(double delay, Polynomial num, Polynomial den) {
  auto fn = [delay, num = std::move(num), den = std::move(den)](
                std::complex<double> s) -> std::complex<double> {
    std::complex<double> value = num(s) / den(s);
    if (delay > 0.0) value *= std::exp(-s * delay);
    return value;
  };
  BoundaryFunction f = BoundaryFunction::scalar(Coordinate::halfplane, std::move(fn));
  f.real_symmetric = true;
  f.oscillation_rate = delay;
  return f;
}

}  // namespace

CoprimePair CoprimePair::from_plant(const DelayRationalPlant& plant) {
  const Polynomial r = para_hermitian_sum(plant.den, plant.num);
  const SpectralFactorizationResult spectral = spectral_factor(r);

  CoprimePair pair;
  pair.p_ = 1;
  pair.m_ = 1;
  pair.N_ = siso_factor_function(plant.delay, plant.num, spectral.factor);
  pair.D_ = siso_factor_function(0.0, plant.den, spectral.factor);
  pair.Nt_ = pair.N_;
  pair.Dt_ = pair.D_;
  pair.siso_ = SisoFactorData{plant.delay, plant.num, plant.den, spectral.factor};
  return pair;
}

CoprimePair CoprimePair::from_functions(int outputs, int inputs, BoundaryFunction N,
                                        BoundaryFunction D, BoundaryFunction Ntilde,
                                        BoundaryFunction Dtilde) {
  if (outputs < 1 || inputs < 1) throw std::invalid_argument("factor pair shape must be positive");
  const Coordinate coord = N.coordinate();
  auto check = [&](const BoundaryFunction& f, int rows, int cols, const char* name) {
    if (f.coordinate() != coord)
      throw std::invalid_argument(std::string("factor ") + name +
                                  " uses a different coordinate than N");
    if (f.rows() != rows || f.cols() != cols)
      throw std::invalid_argument(std::string("factor ") + name + " has the wrong shape");
  };
  check(N, outputs, inputs, "N");
  check(D, inputs, inputs, "D");
  check(Ntilde, outputs, inputs, "Ntilde");
  check(Dtilde, outputs, outputs, "Dtilde");
  CoprimePair pair;
  pair.p_ = outputs;
  pair.m_ = inputs;
  pair.N_ = std::move(N);
  pair.D_ = std::move(D);
  pair.Nt_ = std::move(Ntilde);
  pair.Dt_ = std::move(Dtilde);
  return pair;
}

BoundaryFunction CoprimePair::graph_symbol() const {
  const BoundaryFunction N = N_, D = D_;
  const int p = p_, m = m_;
  auto fn = [N, D, p, m](std::complex<double> z) {
    Eigen::MatrixXcd g(p + m, m);
    g.topRows(p) = N.eval_matrix(z);
    g.bottomRows(m) = D.eval_matrix(z);
    return g;
  };
  BoundaryFunction out = BoundaryFunction::matrix(coordinate(), p + m, m, std::move(fn));
  out.real_symmetric = N_.real_symmetric && D_.real_symmetric;
  return out;
}

BoundaryFunction CoprimePair::inverse_graph_symbol() const {
  const BoundaryFunction Nt = Nt_, Dt = Dt_;
  const int p = p_, m = m_;
  auto fn = [Nt, Dt, p, m](std::complex<double> z) {
    Eigen::MatrixXcd g(p, p + m);
    g.leftCols(p) = -Dt.eval_matrix(z);
    g.rightCols(m) = Nt.eval_matrix(z);
    return g;
  };
  BoundaryFunction out = BoundaryFunction::matrix(coordinate(), p, p + m, std::move(fn));
  out.real_symmetric = Nt_.real_symmetric && Dt_.real_symmetric;
  return out;
}

CoprimePair normalized_coprime_factorization(const DelayRationalPlant& plant) {
  CoprimePair pair = CoprimePair::from_plant(plant);
  const double residual = validate_normalization(pair, default_omega_grid(500, 1e-4, 1e6));
  if (!(residual <= kNcfResidualTol)) {
    std::ostringstream msg;
    msg << "normalized factorization residual " << residual << " exceeds " << kNcfResidualTol;
    throw FactorizationError(msg.str());
  }
  return pair;
}

double validate_normalization(const CoprimePair& pair, const std::vector<double>& omega_grid) {
  if (omega_grid.empty()) throw std::invalid_argument("validation grid is empty");
  const BoundaryFunction G = pair.graph_symbol();
  const BoundaryFunction Gt = pair.inverse_graph_symbol();
  const Eigen::MatrixXcd Im = Eigen::MatrixXcd::Identity(pair.inputs(), pair.inputs());
  const Eigen::MatrixXcd Ip = Eigen::MatrixXcd::Identity(pair.outputs(), pair.outputs());

  double worst = 0.0;
  for (double omega : omega_grid) {
    const std::complex<double> s(0.0, omega);
    const std::complex<double> point =
        pair.coordinate() == Coordinate::halfplane ? s : (s - 1.0) / (s + 1.0);
    const Eigen::MatrixXcd g = G.eval_matrix(point);
    const Eigen::MatrixXcd gt = Gt.eval_matrix(point);
    worst = std::max(worst, sigma_max(g.adjoint() * g - Im));
    worst = std::max(worst, sigma_max(gt * gt.adjoint() - Ip));
  }
  return worst;
}

}  // namespace nugap
