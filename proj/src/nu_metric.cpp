#include "nugap/nu_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "nugap/contour.hpp"
#include "nugap/errors.hpp"

namespace nugap {

namespace {

// limsup |num(i w)/den(i w)| as |w| -> inf for proper rational data.
double tail_ratio(const Polynomial& num, const Polynomial& den) {
  if (num.is_zero()) return 0.0;
  if (num.degree() > den.degree())
    throw std::logic_error("tail ratio of an improper quotient");
  if (num.degree() < den.degree()) return 0.0;
  return std::abs(num.leading()) / std::abs(den.leading());
}

double pair_rate(const CoprimePair& g) {
  double rate = std::max(g.N().oscillation_rate, g.D().oscillation_rate);
  rate = std::max(rate, g.Ntilde().oscillation_rate);
  return std::max(rate, g.Dtilde().oscillation_rate);
}

bool pair_real_symmetric(const CoprimePair& g) {
  return g.N().real_symmetric && g.D().real_symmetric && g.Ntilde().real_symmetric &&
         g.Dtilde().real_symmetric;
}

void require_compatible(const CoprimePair& g1, const CoprimePair& g2) {
  if (g1.inputs() != g2.inputs() || g1.outputs() != g2.outputs())
    throw std::invalid_argument("factor pairs have mismatched shapes");
  if (g1.coordinate() != g2.coordinate())
    throw std::invalid_argument("factor pairs use different coordinates");
}

void require_normalized(const CoprimePair& g, double tol, const char* label) {
  const double residual = validate_normalization(g, default_omega_grid());
  if (!(residual <= tol)) {
    std::ostringstream msg;
    msg << label << " factor pair is not normalized: residual " << residual
        << " exceeds tolerance " << tol;
    throw std::invalid_argument(msg.str());
  }
}

void validate_options(const MetricOptions& options) {
  if (!(options.delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(options.r_max >= 0.99 && options.r_max < 1.0))
    throw std::invalid_argument("r_max must lie in [0.99, 1)");
  if (options.stabilization_count < 1)
    throw std::invalid_argument("stabilization count must be at least 1");
  if (options.coarse_n < 2) throw std::invalid_argument("coarse_n must be at least 2");
  if (options.initial_n < 1) throw std::invalid_argument("initial_n must be at least 1");
  if (!(options.pair_validation_tol > 0.0))
    throw std::invalid_argument("pair validation tolerance must be positive");
}

// Transport a disk-coordinate function to half-plane coordinates so the norm
// search can walk the imaginary axis; z = (s - 1)/(s + 1) maps it to the
// unit circle.
BoundaryFunction as_halfplane(const BoundaryFunction& F) {
  if (F.coordinate() == Coordinate::halfplane) return F;
  const BoundaryFunction inner = F;
  auto fn = [inner](std::complex<double> s) -> Eigen::MatrixXcd {
    return inner.eval_matrix((s - 1.0) / (s + 1.0));
  };
  BoundaryFunction out = BoundaryFunction::matrix(Coordinate::halfplane, F.rows(), F.cols(), fn);
  out.oscillation_rate = F.oscillation_rate;
  out.tail_limit = F.tail_limit;
  out.real_symmetric = F.real_symmetric;
  return out;
}

NuResult run_metric(const CoprimePair& g1, const CoprimePair& g2, const MetricOptions& options,
                    std::optional<double> rho) {
  validate_options(options);
  require_compatible(g1, g2);
  require_normalized(g1, options.pair_validation_tol, "first");
  require_normalized(g2, options.pair_validation_tol, "second");

  std::vector<double> radii = RadiusSchedule::geometric(options.r_max, 1).radii;
  int stabilization = options.stabilization_count;
  if (rho) {
    if (!(*rho > 0.0 && *rho < options.r_max))
      throw std::invalid_argument("rho must satisfy 0 < rho < r_max");
    std::erase_if(radii, [&](double r) { return r <= *rho; });
    if (radii.empty()) throw std::invalid_argument("no schedule radii above rho");
    stabilization = static_cast<int>(radii.size());
  } else {
    stabilization = std::min<int>(stabilization, static_cast<int>(radii.size()));
  }
  const RadiusSchedule schedule(std::move(radii), stabilization);

  NuResult result;
  result.options = options;
  result.route = rho ? Route::fixed_rho_route : Route::limit_route;
  result.rho = rho;

  const BoundaryFunction f = det_boundary(cross_gram(g1, g2));
  const ProbeReport probe = invertibility_probe(f, schedule, options.delta, options.initial_n);
  result.margin_curve = probe.curve;
  result.invertible = probe.invertible;
  if (!probe.invertible) {
    result.value = 1.0;
    result.branch = Branch::unity_branch;
    return result;
  }

  const LimitIndexResult index = limit_index_W(f, schedule, options.initial_n);
  result.winding = index.winding;
  for (std::size_t k = 0; k < result.margin_curve.size(); ++k) {
    const CircleScan& scan = index.sequence[k];
    CircleScan& entry = result.margin_curve[k];
    entry.winding = scan.winding;
    entry.min_modulus = std::min(entry.min_modulus, scan.min_modulus);
    entry.samples_used += scan.samples_used;
    entry.converged = scan.converged;
  }
  if (index.winding != 0) {
    result.value = 1.0;
    result.branch = Branch::unity_branch;
    return result;
  }

  NormSearchOptions norm_options;
  norm_options.omega_max = options.omega_max;
  norm_options.coarse_n = options.coarse_n;
  const NormSearchResult search = hinf_norm(as_halfplane(parallel_residual(g1, g2)), norm_options);
  result.norm_search = search;
  result.value = search.value;
  result.branch = Branch::norm_branch;
  return result;
}

void validate_zero_family(double T, double b, double a1, double a2) {
  if (!(std::isfinite(T) && T >= 0.0)) throw std::invalid_argument("delay T must be finite and >= 0");
  if (!(std::isfinite(b) && b > 0.0)) throw std::invalid_argument("pole b must be finite and > 0");
  if (!std::isfinite(a1) || !std::isfinite(a2))
    throw std::invalid_argument("zeros a1, a2 must be finite");
  if (a1 == b || a2 == b)
    throw std::invalid_argument("zeros must differ from the pole: a_i != b");
}

DelayRationalPlant zero_family_plant(double T, double b, double a) {
  return DelayRationalPlant(T, Polynomial({-a, 1.0}), Polynomial({-b, 1.0}));
}

}  // namespace

BoundaryFunction cross_gram(const CoprimePair& g1, const CoprimePair& g2) {
  require_compatible(g1, g2);

  if (g1.siso() && g2.siso()) {
    const SisoFactorData a = *g1.siso();
    const SisoFactorData b = *g2.siso();
    auto fn = [a, b](std::complex<double> s) -> std::complex<double> {
      const std::complex<double> phase = std::exp(-(std::conj(s) * a.delay + s * b.delay));
      const std::complex<double> numerator =
          phase * std::conj(a.num(s)) * b.num(s) + std::conj(a.den(s)) * b.den(s);
      return numerator / (std::conj(a.spectral_den(s)) * b.spectral_den(s));
    };
    BoundaryFunction out = BoundaryFunction::scalar(Coordinate::halfplane, std::move(fn));
    out.oscillation_rate = std::abs(a.delay - b.delay);
    out.real_symmetric = true;
    return out;
  }

  const BoundaryFunction lhs = g1.graph_symbol();
  const BoundaryFunction rhs = g2.graph_symbol();
  auto fn = [lhs, rhs](std::complex<double> z) -> Eigen::MatrixXcd {
    return lhs.eval_matrix(z).adjoint() * rhs.eval_matrix(z);
  };
  BoundaryFunction out =
      BoundaryFunction::matrix(g1.coordinate(), g1.inputs(), g2.inputs(), std::move(fn));
  out.oscillation_rate = pair_rate(g1) + pair_rate(g2);
  out.real_symmetric = pair_real_symmetric(g1) && pair_real_symmetric(g2);
  return out;
}

BoundaryFunction parallel_residual(const CoprimePair& g1, const CoprimePair& g2) {
  require_compatible(g1, g2);

  if (g1.siso() && g2.siso()) {
    const SisoFactorData a = *g1.siso();
    const SisoFactorData b = *g2.siso();
    const Polynomial d12 = a.spectral_den * b.spectral_den;

    BoundaryFunction out;
    if (a.delay == b.delay) {
      const Polynomial cross = b.num * a.den - a.num * b.den;
      const double delay = a.delay;
      auto fn = [cross, d12, delay](std::complex<double> s) -> std::complex<double> {
        return std::exp(-s * delay) * cross(s) / d12(s);
      };
      out = BoundaryFunction::scalar(Coordinate::halfplane, std::move(fn));
      out.tail_limit = tail_ratio(cross, d12);
    } else {
      const Polynomial lead = b.num * a.den;   // carries exp(-s * b.delay)
      const Polynomial trail = a.num * b.den;  // carries exp(-s * a.delay)
      const double Ta = a.delay, Tb = b.delay;
      auto fn = [lead, trail, d12, Ta, Tb](std::complex<double> s) -> std::complex<double> {
        return (std::exp(-s * Tb) * lead(s) - std::exp(-s * Ta) * trail(s)) / d12(s);
      };
      out = BoundaryFunction::scalar(Coordinate::halfplane, std::move(fn));
      out.tail_limit = tail_ratio(lead, d12) + tail_ratio(trail, d12);
    }
    out.oscillation_rate = std::max(a.delay, b.delay);
    out.real_symmetric = true;
    return out;
  }

  const BoundaryFunction lhs = g2.inverse_graph_symbol();
  const BoundaryFunction rhs = g1.graph_symbol();
  auto fn = [lhs, rhs](std::complex<double> z) -> Eigen::MatrixXcd {
    return lhs.eval_matrix(z) * rhs.eval_matrix(z);
  };
  BoundaryFunction out =
      BoundaryFunction::matrix(g1.coordinate(), g2.outputs(), g1.inputs(), std::move(fn));
  out.oscillation_rate = pair_rate(g1) + pair_rate(g2);
  out.real_symmetric = pair_real_symmetric(g1) && pair_real_symmetric(g2);
  return out;
}

NuResult nu_metric(const CoprimePair& g1, const CoprimePair& g2, const MetricOptions& options) {
  return run_metric(g1, g2, options, std::nullopt);
}

NuResult nu_metric(const DelayRationalPlant& p1, const DelayRationalPlant& p2,
                   const MetricOptions& options) {
  return run_metric(normalized_coprime_factorization(p1), normalized_coprime_factorization(p2),
                    options, std::nullopt);
}

NuResult nu_metric_fixed_rho(const CoprimePair& g1, const CoprimePair& g2, double rho,
                             const MetricOptions& options) {
  return run_metric(g1, g2, options, rho);
}

NuResult nu_metric_fixed_rho(const DelayRationalPlant& p1, const DelayRationalPlant& p2,
                             double rho, const MetricOptions& options) {
  return run_metric(normalized_coprime_factorization(p1), normalized_coprime_factorization(p2),
                    options, rho);
}

ClosedFormResult closed_form_zero_uncertainty(double T, double b, double a1, double a2) {
  validate_zero_family(T, b, a1, a2);

  ClosedFormResult out;
  out.discriminant = (a1 * a1 - b * b) * (a2 * a2 - b * b) - 4.0 * b * b * b * b;
  if (out.discriminant >= 0.0) {
    out.kind = UncertaintyCase::interior_peak;
    out.value = std::abs(a1 - a2) /
                (std::sqrt(2.0) * (std::sqrt(a1 * a1 - b * b) + std::sqrt(a2 * a2 - b * b)));
  } else {
    out.kind = UncertaintyCase::zero_peak;
    out.value =
        b * std::abs(a1 - a2) / (std::sqrt(a1 * a1 + b * b) * std::sqrt(a2 * a2 + b * b));
  }

  const PositivityReport report = lemma_positivity_check(
      T, b, a1, a2, boundary_probe_points({0.9, 0.99, 0.999}, 512, 512, 1e6));
  out.lemma_positive = report.positive;
  out.positivity_margin = report.min_real;
  return out;
}

double closed_form_pole_uncertainty(double a1, double a2) {
  if (!(std::isfinite(a1) && a1 > 0.0) || !(std::isfinite(a2) && a2 > 0.0))
    throw std::invalid_argument("pole offsets a1, a2 must be finite and > 0");
  return std::abs(a1 - a2) / (std::sqrt(2.0) * (a1 + a2));
}

PositivityReport lemma_positivity_check(double T, double b, double a1, double a2,
                                        const std::vector<std::complex<double>>& points) {
  validate_zero_family(T, b, a1, a2);
  if (points.empty()) throw std::invalid_argument("positivity check needs at least one point");

  const CoprimePair g1 = normalized_coprime_factorization(zero_family_plant(T, b, a1));
  const CoprimePair g2 = normalized_coprime_factorization(zero_family_plant(T, b, a2));
  const BoundaryFunction f = cross_gram(g1, g2);

  PositivityReport report;
  report.min_real = std::numeric_limits<double>::infinity();
  for (const auto& s : points) {
    if (!(s.real() >= 0.0))
      throw std::invalid_argument("positivity check points must satisfy Re(s) >= 0");
    report.min_real = std::min(report.min_real, f.eval_scalar(s).real());
  }
  report.points = static_cast<long>(points.size());
  report.positive = report.min_real > 0.0;
  return report;
}

std::vector<std::complex<double>> boundary_probe_points(const std::vector<double>& radii,
                                                        long per_circle, long axis_points,
                                                        double omega_max) {
  if (per_circle < 1) throw std::invalid_argument("per_circle must be at least 1");
  if (axis_points < 0) throw std::invalid_argument("axis_points must be nonnegative");
  if (axis_points > 0 && !(omega_max > 1e-4))
    throw std::invalid_argument("omega_max must exceed 1e-4");

  std::vector<std::complex<double>> points;
  points.reserve(radii.size() * static_cast<std::size_t>(per_circle) +
                 static_cast<std::size_t>(axis_points));
  for (double r : radii) {
    for (const auto& z : circle_samples(r, per_circle)) points.push_back(mobius_to_halfplane(z));
  }
  if (axis_points == 1) {
    points.emplace_back(0.0, 1e-4);
  } else {
    for (long k = 0; k < axis_points; ++k) {
      const double w = 1e-4 * std::pow(omega_max / 1e-4,
                                       static_cast<double>(k) / static_cast<double>(axis_points - 1));
      points.emplace_back(0.0, w);
    }
  }
  return points;
}

}  // namespace nugap
