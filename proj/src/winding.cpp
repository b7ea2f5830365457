#include "nugap/winding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/LU>

#include "nugap/contour.hpp"
#include "nugap/errors.hpp"

namespace nugap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxPhaseStep = std::numbers::pi / 2.0;
constexpr double kClosureTol = 0.1;
constexpr int kTroughRefineCount = 48;

// Point evaluator on the circle of radius r, transporting half-plane
// functions through the Möbius map.
class CircleEvaluator {
 public:
  CircleEvaluator(const BoundaryFunction& f, double r) : f_(f), r_(r) {
    if (!(r > 0.0 && r < 1.0))
      throw std::invalid_argument("contour radius must be inside (0, 1)");
    if (!f.is_scalar())
      throw std::invalid_argument("winding analysis needs a scalar boundary function");
  }

  std::complex<double> at(double theta) const {
    std::complex<double> z = std::polar(r_, theta);
    if (f_.coordinate() == Coordinate::halfplane) z = mobius_to_halfplane(z);
    return f_.eval_scalar(z);
  }

  double modulus_at(double theta) const { return std::abs(at(theta)); }

 private:
  const BoundaryFunction& f_;
  double r_;
};

double theta_of(long k, long n) {
  return kTwoPi * static_cast<double>(k) / static_cast<double>(n);
}

long ceil_to_long(double x, long lo, long hi) {
  if (!(x > 0.0)) return lo;
  if (x >= static_cast<double>(hi)) return hi;
  return std::max(lo, static_cast<long>(std::ceil(x)));
}

struct WindingScan {
  WindingResult result;
  bool zero_on_contour = false;
};

WindingScan scan_winding(const BoundaryFunction& f, double r, long initial_n) {
  const CircleEvaluator eval(f, r);

  long n = std::max(initial_n, 8L);
  if (f.oscillation_rate > 0.0) {
    // The hint bounds |d arg / d Im(s)| of the delay factor; along the circle
    // the phase slope is at most rate * max |dIm(s)/dtheta|, which the Möbius
    // transport stretches to 2r/(1-r)^2. Keeping hinted steps under pi/2
    // needs 4x that many samples; past the budget no scan is trustworthy
    // (aliased chirps pass every per-grid test), so refuse rather than guess.
    const double slope = f.coordinate() == Coordinate::halfplane
                             ? 2.0 * r * f.oscillation_rate / ((1.0 - r) * (1.0 - r))
                             : r * f.oscillation_rate;
    const double needed = 4.0 * slope;
    if (needed > static_cast<double>(kCircleBudget)) {
      WindingScan scan;
      scan.result.converged = false;
      scan.result.samples_used = 0;
      scan.result.min_modulus = std::numeric_limits<double>::infinity();
      return scan;
    }
    n = std::max(n, ceil_to_long(needed, n, kCircleBudget));
  }
  n = std::min(n, kCircleBudget);

  std::vector<std::complex<double>> values(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) values[static_cast<std::size_t>(k)] = eval.at(theta_of(k, n));

  WindingScan scan;
  // A single grid passing the step test can still alias a fast phase chirp
  // into a confident wrong integer, so convergence additionally demands the
  // same winding from two consecutive refinement levels.
  std::optional<long> previous_pass;
  for (;;) {
    double min_mod = std::numeric_limits<double>::infinity();
    for (const auto& w : values) min_mod = std::min(min_mod, std::abs(w));
    scan.result.min_modulus = min_mod;
    scan.result.samples_used = n;
    if (min_mod < kWindingModulusFloor) {
      scan.zero_on_contour = true;
      scan.result.converged = false;
      return scan;
    }

    double total = 0.0, max_step = 0.0;
    for (long k = 0; k < n; ++k) {
      const auto& a = values[static_cast<std::size_t>(k)];
      const auto& b = values[static_cast<std::size_t>((k + 1) % n)];
      const double step = std::arg(b * std::conj(a));
      total += step;
      max_step = std::max(max_step, std::abs(step));
    }
    const double turns = total / kTwoPi;
    const long rounded = std::lround(turns);
    const double closure = std::abs(total - kTwoPi * static_cast<double>(rounded));
    scan.result.winding = static_cast<int>(rounded);

    if (max_step < kMaxPhaseStep && closure < kClosureTol) {
      if (previous_pass && *previous_pass == rounded) {
        scan.result.converged = true;
        return scan;
      }
      previous_pass = rounded;
    } else {
      previous_pass.reset();
    }
    if (2 * n > kCircleBudget) {
      scan.result.converged = false;
      return scan;
    }

    // Double the grid; even indices reuse the existing values (evaluators
    // are pure, so reuse is exact).
    std::vector<std::complex<double>> finer(static_cast<std::size_t>(2 * n));
    for (long k = 0; k < n; ++k) {
      finer[static_cast<std::size_t>(2 * k)] = values[static_cast<std::size_t>(k)];
      finer[static_cast<std::size_t>(2 * k + 1)] = eval.at(theta_of(2 * k + 1, 2 * n));
    }
    values = std::move(finer);
    n *= 2;
  }
}

double golden_min(const CircleEvaluator& eval, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = eval.modulus_at(x1);
  double f2 = eval.modulus_at(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = eval.modulus_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = eval.modulus_at(x2);
    }
  }
  return std::min(f1, f2);
}

struct MarginScan {
  double margin = 0.0;
  long samples_used = 0;
};

MarginScan scan_min_modulus(const BoundaryFunction& f, double r, long initial_n) {
  const CircleEvaluator eval(f, r);

  long n = std::max(initial_n, 8L);
  if (f.oscillation_rate > 0.0)
    n = std::max(n, ceil_to_long(8.0 * f.oscillation_rate / std::sqrt(1.0 - r), n, kCircleBudget));
  n = std::min(n, kCircleBudget);

  std::vector<double> moduli(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) moduli[static_cast<std::size_t>(k)] = eval.modulus_at(theta_of(k, n));

  MarginScan out;
  out.samples_used = n;
  double prev = -1.0;
  int stable = 0;
  for (;;) {
    // Deepest sampled troughs, refined to their true bottoms: a trough much
    // narrower than the sample spacing still gets measured exactly once one
    // sample lands inside it.
    std::vector<long> minima;
    for (long k = 0; k < n; ++k) {
      const double m = moduli[static_cast<std::size_t>(k)];
      const double left = moduli[static_cast<std::size_t>((k + n - 1) % n)];
      const double right = moduli[static_cast<std::size_t>((k + 1) % n)];
      if (m <= left && m <= right) minima.push_back(k);
    }
    std::sort(minima.begin(), minima.end(), [&](long a, long b) {
      return moduli[static_cast<std::size_t>(a)] < moduli[static_cast<std::size_t>(b)];
    });
    if (static_cast<int>(minima.size()) > kTroughRefineCount) minima.resize(kTroughRefineCount);

    double margin = *std::min_element(moduli.begin(), moduli.end());
    const double spacing = kTwoPi / static_cast<double>(n);
    for (long k : minima) {
      const double center = theta_of(k, n);
      const double refined =
          golden_min(eval, center - spacing, center + spacing, std::max(1e-12, spacing * 1e-9));
      margin = std::min(margin, refined);
      out.samples_used += 40;
    }
    out.margin = margin;

    if (prev >= 0.0 && std::abs(margin - prev) <= 0.02 * std::max(margin, 1e-300))
      ++stable;
    else
      stable = 0;
    prev = margin;
    if (stable >= 2 || 2 * n > kCircleBudget) return out;

    std::vector<double> finer(static_cast<std::size_t>(2 * n));
    for (long k = 0; k < n; ++k) {
      finer[static_cast<std::size_t>(2 * k)] = moduli[static_cast<std::size_t>(k)];
      finer[static_cast<std::size_t>(2 * k + 1)] = eval.modulus_at(theta_of(2 * k + 1, 2 * n));
    }
    moduli = std::move(finer);
    n *= 2;
    out.samples_used += n / 2;
  }
}

}  // namespace

RadiusSchedule::RadiusSchedule(std::vector<double> radii_in, int stabilization_count_in)
    : radii(std::move(radii_in)), stabilization_count(stabilization_count_in) {
  if (radii.empty()) throw std::invalid_argument("radius schedule is empty");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0 && radii[k] < 1.0))
      throw std::invalid_argument("schedule radii must lie inside (0, 1)");
    if (k > 0 && !(radii[k] > radii[k - 1]))
      throw std::invalid_argument("schedule radii must be strictly increasing");
  }
  if (!(radii.back() >= 0.99))
    throw std::invalid_argument("schedule must approach the boundary: last radius >= 0.99");
  if (stabilization_count < 1 || stabilization_count > static_cast<int>(radii.size()))
    throw std::invalid_argument("stabilization count must be in [1, schedule size]");
}

RadiusSchedule RadiusSchedule::geometric(double r_max, int stabilization_count) {
  if (!(r_max >= 0.99 && r_max < 1.0))
    throw std::invalid_argument("schedule end must lie in [0.99, 1)");
  std::vector<double> radii;
  double step = 0.25;  // 2^-(k+1), k = 1
  while (1.0 - step < r_max) {
    radii.push_back(1.0 - step);
    step *= 0.5;
  }
  radii.push_back(r_max);
  return RadiusSchedule(std::move(radii), stabilization_count);
}

WindingResult winding_on_circle(const BoundaryFunction& f, double r, long initial_n) {
  const WindingScan scan = scan_winding(f, r, initial_n);
  if (scan.zero_on_contour) {
    std::ostringstream msg;
    msg << "winding undefined: |f| fell under " << kWindingModulusFloor << " on the circle r = "
        << r;
    throw WindingError(msg.str());
  }
  return scan.result;
}

LimitIndexResult limit_index_W(const BoundaryFunction& f, const RadiusSchedule& schedule,
                               long initial_n) {
  LimitIndexResult out;
  out.sequence.reserve(schedule.radii.size());
  for (double r : schedule.radii) {
    const WindingScan scan = scan_winding(f, r, initial_n);
    CircleScan entry;
    entry.r = r;
    entry.min_modulus = scan.result.min_modulus;
    entry.samples_used = scan.result.samples_used;
    entry.converged = scan.result.converged && !scan.zero_on_contour;
    if (entry.converged) entry.winding = scan.result.winding;
    out.sequence.push_back(entry);
  }

  const std::size_t tail_start = out.sequence.size() - static_cast<std::size_t>(schedule.stabilization_count);
  std::optional<int> agreed;
  for (std::size_t k = tail_start; k < out.sequence.size(); ++k) {
    const CircleScan& entry = out.sequence[k];
    if (!entry.converged || !entry.winding) {
      std::ostringstream msg;
      msg << "winding did not stabilize: circle r = " << entry.r
          << " did not converge within the sample budget";
      throw InconclusiveError(msg.str());
    }
    if (!agreed) {
      agreed = entry.winding;
    } else if (*agreed != *entry.winding) {
      std::ostringstream msg;
      msg << "winding did not stabilize: tail circles disagree (" << *agreed << " vs "
          << *entry.winding << " at r = " << entry.r << ")";
      throw InconclusiveError(msg.str());
    }
  }
  out.winding = *agreed;
  return out;
}

ProbeReport invertibility_probe(const BoundaryFunction& f, const RadiusSchedule& schedule,
                                double delta, long initial_n) {
  if (!(delta > 0.0)) throw std::invalid_argument("invertibility delta must be positive");
  ProbeReport report;
  report.delta = delta;
  report.curve.reserve(schedule.radii.size());
  for (double r : schedule.radii) {
    const MarginScan scan = scan_min_modulus(f, r, initial_n);
    CircleScan entry;
    entry.r = r;
    entry.min_modulus = scan.margin;
    entry.samples_used = scan.samples_used;
    entry.converged = true;
    report.curve.push_back(entry);
  }
  const std::size_t tail_start = report.curve.size() - static_cast<std::size_t>(schedule.stabilization_count);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = tail_start; k < report.curve.size(); ++k)
    worst = std::min(worst, report.curve[k].min_modulus);
  report.worst_tail_margin = worst;
  report.invertible = worst >= delta;
  return report;
}

BoundaryFunction det_boundary(const BoundaryFunction& f) {
  if (f.rows() != f.cols())
    throw std::invalid_argument("determinant needs a square boundary function");
  if (f.is_scalar()) return f;

  const BoundaryFunction inner = f;
  auto fn = [inner](std::complex<double> z) -> std::complex<double> {
    const Eigen::MatrixXcd m = inner.eval_matrix(z);
    if (m.rows() == 1) return m(0, 0);
    if (m.rows() == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
  };
  BoundaryFunction out = BoundaryFunction::scalar(f.coordinate(), std::move(fn));
  out.oscillation_rate = f.oscillation_rate;
  out.real_symmetric = f.real_symmetric;
  return out;
}

}  // namespace nugap
