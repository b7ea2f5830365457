#pragma once

#include <optional>
#include <vector>

#include "nugap/boundary_function.hpp"

namespace nugap {

// Hard cap on evaluation points per circle.
inline constexpr long kCircleBudget = 1L << 22;
// Samples with modulus under this floor count as zeros on the contour.
inline constexpr double kWindingModulusFloor = 1e-300;
// Default last radius of the geometric schedule: 1 - 2^-15.
inline constexpr double kDefaultRMax = 1.0 - 1.0 / 32768.0;

struct WindingResult {
  int winding = 0;
  double min_modulus = 0.0;
  long samples_used = 0;
  bool converged = false;
};

// Strictly increasing radii in (0,1) approaching 1; the last
// stabilization_count entries are the tail that limit statements are read
// from. Construction enforces: ascending, inside (0,1), last radius >= 0.99,
// 1 <= stabilization_count <= size.
struct RadiusSchedule {
  RadiusSchedule(std::vector<double> radii, int stabilization_count);
  // Radii 1 - 2^-(k+1), k = 1, 2, ..., ending exactly at r_max.
  static RadiusSchedule geometric(double r_max = kDefaultRMax, int stabilization_count = 4);

  std::vector<double> radii;
  int stabilization_count;
};

// Winding number of f around 0 along the circle of radius r (disk functions
// sampled directly, half-plane functions through the Möbius transport).
// Sampling doubles from initial_n until every consecutive phase step is
// below pi/2 and the accumulated argument is within 0.1 rad of a multiple of
// 2*pi, or the budget is exhausted (converged = false, not an error).
// Throws WindingError if a sample modulus falls under the floor.
WindingResult winding_on_circle(const BoundaryFunction& f, double r, long initial_n = 1024);

struct CircleScan {
  double r = 0.0;
  std::optional<int> winding;  // absent when the winding pass was skipped or failed
  double min_modulus = 0.0;
  long samples_used = 0;
  bool converged = false;
};

struct LimitIndexResult {
  int winding = 0;
  std::vector<CircleScan> sequence;
};

// Limit of the winding numbers along the schedule. The tail windings must
// all converge and agree; otherwise throws InconclusiveError.
LimitIndexResult limit_index_W(const BoundaryFunction& f, const RadiusSchedule& schedule,
                               long initial_n = 1024);

struct ProbeReport {
  bool invertible = false;
  double delta = 0.0;
  double worst_tail_margin = 0.0;
  std::vector<CircleScan> curve;  // r -> min_modulus for every schedule radius
};

// Invertibility margin probe: min |f| on each schedule circle, estimated by
// a uniform scan plus golden-section refinement of the deepest troughs,
// doubled until the estimate stabilizes. Verdict: margin >= delta on every
// tail circle. A false verdict is a result, not an error.
ProbeReport invertibility_probe(const BoundaryFunction& f, const RadiusSchedule& schedule,
                                double delta = 1e-4, long initial_n = 1024);

// Pointwise determinant of a square matrix boundary function (1x1 and 2x2
// short-circuited, partial-pivot LU above).
BoundaryFunction det_boundary(const BoundaryFunction& f);

}  // namespace nugap
