#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "nugap/boundary_function.hpp"
#include "nugap/plant.hpp"
#include "nugap/polynomial.hpp"

namespace nugap {

// r(s) = p(s)p(-s) + q(s)q(-s). Requires not both inputs zero.
Polynomial para_hermitian_sum(const Polynomial& p, const Polynomial& q);

// Maximum of |d(i w)d(-i w) - r(i w)| / (1 + |r(i w)|) tolerated for a
// spectral factor, and of ||G*G - I|| for a freshly built factorization.
inline constexpr double kSpectralResidualTol = 1e-8;
inline constexpr double kNcfResidualTol = 1e-10;

struct SpectralFactorizationResult {
  Polynomial factor;                        // stable, positive leading coefficient
  std::vector<std::complex<double>> roots;  // all strictly in the open left half plane
  double residual;                          // relative reconstruction error on the axis grid
};

// Stable polynomial d with d(s)d(-s) = r(s). Requires r even, r(i w) > 0 on
// the axis (no spectrum on the imaginary axis, no indefiniteness), and
// degree <= 2*kMaxRootDegree. Throws FactorizationError otherwise.
SpectralFactorizationResult spectral_factor(const Polynomial& r);

// Concrete data behind a factorization built from a delay-rational plant:
// N(s) = exp(-s*delay) num(s)/spectral_den(s), D(s) = den(s)/spectral_den(s).
struct SisoFactorData {
  double delay;
  Polynomial num;           // plant numerator
  Polynomial den;           // plant denominator
  Polynomial spectral_den;  // stable spectral factor of den*den~ + num*num~
};

// Normalized coprime factor pair: right factors N (p x m), D (m x m) with
// G = [N; D] an isometry on the axis, and left factors Ntilde (p x m),
// Dtilde (p x p) with Gtilde = [-Dtilde, Ntilde] a co-isometry. Scalar pairs
// built from plants share N = Ntilde, D = Dtilde.
class CoprimePair {
 public:
  static CoprimePair from_plant(const DelayRationalPlant& plant);
  static CoprimePair from_functions(int outputs, int inputs, BoundaryFunction N,
                                    BoundaryFunction D, BoundaryFunction Ntilde,
                                    BoundaryFunction Dtilde);

  int outputs() const { return p_; }
  int inputs() const { return m_; }
  Coordinate coordinate() const { return N_.coordinate(); }

  const BoundaryFunction& N() const { return N_; }
  const BoundaryFunction& D() const { return D_; }
  const BoundaryFunction& Ntilde() const { return Nt_; }
  const BoundaryFunction& Dtilde() const { return Dt_; }

  // G(s) = [N(s); D(s)], shape (p+m) x m.
  BoundaryFunction graph_symbol() const;
  // Gtilde(s) = [-Dtilde(s), Ntilde(s)], shape p x (p+m).
  BoundaryFunction inverse_graph_symbol() const;

  const std::optional<SisoFactorData>& siso() const { return siso_; }

 private:
  CoprimePair() = default;
  int p_ = 1, m_ = 1;
  BoundaryFunction N_, D_, Nt_, Dt_;
  std::optional<SisoFactorData> siso_;
};

// Builds the normalized coprime factorization of a plant via spectral
// factorization of den*den~ + num*num~. The result satisfies
// |N(i w)|^2 + |D(i w)|^2 = 1 within kNcfResidualTol (enforced).
CoprimePair normalized_coprime_factorization(const DelayRationalPlant& plant);

// Max over the grid of ||G(i w)* G(i w) - I|| and ||Gt(i w) Gt(i w)* - I||
// (spectral norm). Disk-coordinate pairs are evaluated at the boundary image
// of i w under the inverse transport.
double validate_normalization(const CoprimePair& pair, const std::vector<double>& omega_grid);

// Log-spaced nonnegative frequency grid including 0, used by the validators.
std::vector<double> default_omega_grid(int points = 200, double omega_min = 1e-4,
                                       double omega_max = 1e6);

}  // namespace nugap
