#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "nugap/boundary_function.hpp"
#include "nugap/hinf_norm.hpp"
#include "nugap/ncf.hpp"
#include "nugap/plant.hpp"
#include "nugap/winding.hpp"

namespace nugap {

// f = G1* G2 pointwise (conjugate-transpose of the first graph symbol times
// the second), an inputs x inputs matrix function. Scalar pairs built from
// plants get a direct arithmetic fast path.
BoundaryFunction cross_gram(const CoprimePair& g1, const CoprimePair& g2);

// Gtilde2 G1 pointwise, the outputs x inputs mismatch whose boundary sup
// norm is the candidate metric value. Plant-built pairs carry the analytic
// high-frequency limit of its modulus.
BoundaryFunction parallel_residual(const CoprimePair& g1, const CoprimePair& g2);

enum class Branch { norm_branch, unity_branch };
enum class Route { limit_route, fixed_rho_route };

struct MetricOptions {
  double delta = 1e-4;             // invertibility margin threshold
  double r_max = kDefaultRMax;     // last schedule radius, in [0.99, 1)
  int stabilization_count = 4;
  double omega_max = 1e6;
  int coarse_n = 256;
  long initial_n = 1024;
  double pair_validation_tol = 1e-6;
};

struct NuResult {
  double value = 1.0;
  Branch branch = Branch::unity_branch;
  bool invertible = false;
  std::optional<int> winding;        // limit index when the winding pass ran
  std::vector<CircleScan> margin_curve;
  std::optional<NormSearchResult> norm_search;
  Route route = Route::limit_route;
  std::optional<double> rho;
  MetricOptions options;
};

// Extended nu-metric between two plants (or validated factor pairs): the
// boundary sup norm of Gtilde2 G1 when det(G1* G2) stays invertible toward
// the boundary with limit winding zero, and 1 otherwise. A passing margin
// with a non-stabilizing winding throws InconclusiveError rather than
// guessing.
NuResult nu_metric(const CoprimePair& g1, const CoprimePair& g2, const MetricOptions& options = {});
NuResult nu_metric(const DelayRationalPlant& p1, const DelayRationalPlant& p2,
                   const MetricOptions& options = {});

// Fixed-annulus variant: invertibility and winding are assessed on every
// schedule circle with radius in (rho, 1) instead of the limit tail.
// Requires 0 < rho < r_max.
NuResult nu_metric_fixed_rho(const CoprimePair& g1, const CoprimePair& g2, double rho,
                             const MetricOptions& options = {});
NuResult nu_metric_fixed_rho(const DelayRationalPlant& p1, const DelayRationalPlant& p2,
                             double rho, const MetricOptions& options = {});

// Which branch of the closed form applies to a zero-uncertainty pair:
// interior_peak when the discriminant (a1^2-b^2)(a2^2-b^2) - 4 b^4 is
// nonnegative (the sup sits at an interior frequency), zero_peak otherwise.
enum class UncertaintyCase { interior_peak, zero_peak };

struct ClosedFormResult {
  double value = 0.0;
  UncertaintyCase kind = UncertaintyCase::zero_peak;
  double discriminant = 0.0;
  bool lemma_positive = false;   // numeric positivity of Re det(G1* G2)
  double positivity_margin = 0.0;
};

// Closed form for plants exp(-sT)(s-a_i)/(s-b): either
// |a1-a2| / (sqrt(2)(sqrt(a1^2-b^2)+sqrt(a2^2-b^2))) (interior peak) or
// b|a1-a2| / (sqrt(a1^2+b^2) sqrt(a2^2+b^2)) (peak at omega = 0).
// Requires T >= 0, b > 0, a_i != b.
ClosedFormResult closed_form_zero_uncertainty(double T, double b, double a1, double a2);

// Closed form for plants exp(-sT) s/(s-a_i), a_i > 0: |a1-a2|/(sqrt(2)(a1+a2)).
double closed_form_pole_uncertainty(double a1, double a2);

struct PositivityReport {
  bool positive = false;
  double min_real = 0.0;
  long points = 0;
};

// Evaluates Re det(G1* G2) for the zero-uncertainty pair on the supplied
// half-plane points and reports the observed minimum.
PositivityReport lemma_positivity_check(double T, double b, double a1, double a2,
                                        const std::vector<std::complex<double>>& points);

// Convenience grid: the listed circles transported to the half plane plus
// imaginary-axis samples at log-spaced |omega| in [1e-4, omega_max].
std::vector<std::complex<double>> boundary_probe_points(const std::vector<double>& radii,
                                                        long per_circle, long axis_points,
                                                        double omega_max);

}  // namespace nugap
