#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nugap/errors.hpp"
#include "nugap/winding.hpp"

namespace nugap {
namespace {

using cd = std::complex<double>;

BoundaryFunction disk_fn(BoundaryFunction::ScalarFn f) {
  return BoundaryFunction::scalar(Coordinate::disk, std::move(f));
}

TEST_CASE("geometric schedule halves the gap and ends exactly at r_max") {
  const RadiusSchedule schedule = RadiusSchedule::geometric();
  REQUIRE(schedule.radii.size() >= 5);
  CHECK(schedule.radii.front() == doctest::Approx(0.75));
  CHECK(schedule.radii.back() == kDefaultRMax);
  CHECK(schedule.stabilization_count == 4);
  for (std::size_t k = 1; k < schedule.radii.size(); ++k)
    CHECK(schedule.radii[k] > schedule.radii[k - 1]);

  const RadiusSchedule deep = RadiusSchedule::geometric(1.0 - std::pow(2.0, -31), 4);
  CHECK(deep.radii.back() == doctest::Approx(1.0 - std::pow(2.0, -31)));
  CHECK(deep.radii.size() > schedule.radii.size());
}

TEST_CASE("schedule construction rejects malformed radius lists") {
  CHECK_THROWS_AS(RadiusSchedule({}, 1), std::invalid_argument);
  CHECK_THROWS_AS(RadiusSchedule({0.5, 0.4, 0.995}, 1), std::invalid_argument);
  CHECK_THROWS_AS(RadiusSchedule({0.5, 0.9}, 1), std::invalid_argument);   // last < 0.99
  CHECK_THROWS_AS(RadiusSchedule({0.5, 0.995}, 0), std::invalid_argument);
  CHECK_THROWS_AS(RadiusSchedule({0.5, 0.995}, 3), std::invalid_argument);
  CHECK_THROWS_AS(RadiusSchedule({0.5, 1.0}, 1), std::invalid_argument);
  CHECK_NOTHROW(RadiusSchedule({0.5, 0.995}, 2));
}

TEST_CASE("winding counts zeros minus poles enclosed by the circle") {
  SUBCASE("identity has winding one") {
    const auto res = winding_on_circle(disk_fn([](cd z) { return z; }), 0.5);
    CHECK(res.converged);
    CHECK(res.winding == 1);
    CHECK(res.min_modulus == doctest::Approx(0.5));
  }
  SUBCASE("nonzero constants have winding zero") {
    const auto res = winding_on_circle(disk_fn([](cd) { return cd(5.0, 0.0); }), 0.9);
    CHECK(res.converged);
    CHECK(res.winding == 0);
    CHECK(res.min_modulus == doctest::Approx(5.0));
  }
  SUBCASE("double zero inside, pole outside") {
    const auto res =
        winding_on_circle(disk_fn([](cd z) { return z * z / (z - 2.0); }), 0.5);
    CHECK(res.converged);
    CHECK(res.winding == 2);
  }
  SUBCASE("pole inside subtracts") {
    const auto res = winding_on_circle(
        disk_fn([](cd z) { return (z - 0.1) / ((z - 0.2) * (z + 0.3)); }), 0.6);
    CHECK(res.converged);
    CHECK(res.winding == -1);
  }
  SUBCASE("conjugation negates the count") {
    const auto res =
        winding_on_circle(disk_fn([](cd z) { return std::conj(z); }), 0.5);
    CHECK(res.converged);
    CHECK(res.winding == -1);
  }
  SUBCASE("products add their windings") {
    const auto f = disk_fn([](cd z) { return z * (z - 0.1); });
    const auto res = winding_on_circle(f, 0.5);
    CHECK(res.converged);
    CHECK(res.winding == 2);
  }
}

TEST_CASE("half-plane functions are walked through the transport") {
  // (s-1)/(s+1) has its zero at the image of z = 0: winding 1 on any circle.
  const auto f = BoundaryFunction::scalar(
      Coordinate::halfplane, [](cd s) { return (s - 1.0) / (s + 1.0); });
  for (const double r : {0.5, 0.9, 0.99}) {
    const auto res = winding_on_circle(f, r);
    CHECK(res.converged);
    CHECK(res.winding == 1);
  }
}

TEST_CASE("a zero landing on the contour raises") {
  // The sample at angle zero hits z = 0.5 exactly.
  CHECK_THROWS_AS(winding_on_circle(disk_fn([](cd z) { return z - 0.5; }), 0.5),
                  WindingError);
}

TEST_CASE("unresolvable phase chirps exhaust the budget without converging") {
  // Bits 8..21 of K alternate, so every grid 1024*2^m aliases the phase step
  // into (pi/2, pi] and no refinement level can pass.
  const long K = (1L << 9) | (1L << 11) | (1L << 13) | (1L << 15) | (1L << 17) |
                 (1L << 19) | (1L << 21);
  const auto f = disk_fn([K](cd z) {
    const double theta = std::arg(z);
    return std::polar(1.0, static_cast<double>(K) * theta);
  });
  const auto res = winding_on_circle(f, 0.5);
  CHECK_FALSE(res.converged);
  CHECK(res.samples_used == kCircleBudget);
}

TEST_CASE("oscillation hints beyond the budget refuse instead of guessing") {
  auto f = BoundaryFunction::scalar(Coordinate::halfplane,
                                    [](cd s) { return std::exp(cd(0.0, -0.5) * s.imag()); });
  f.oscillation_rate = 0.5;
  // Required density scales like 8 rate / (1-r)^2: feasible at 0.99,
  // hopeless at 0.9999.
  const auto shallow = winding_on_circle(f, 0.99);
  CHECK(shallow.converged);
  CHECK(shallow.winding == 0);
  const auto deep = winding_on_circle(f, 0.9999);
  CHECK_FALSE(deep.converged);
  CHECK(deep.samples_used == 0);
}

TEST_CASE("limit index follows the schedule and reports the tail winding") {
  const auto f = disk_fn([](cd z) { return z * z * z; });
  const auto res = limit_index_W(f, RadiusSchedule::geometric());
  CHECK(res.winding == 3);
  CHECK(res.sequence.size() == RadiusSchedule::geometric().radii.size());
  for (const auto& scan : res.sequence) {
    CHECK(scan.converged);
    REQUIRE(scan.winding.has_value());
    CHECK(*scan.winding == 3);
  }
}

TEST_CASE("limit index refuses a tail that never agrees") {
  // Winding jumps from 0 to 1 between the last two schedule circles, so the
  // tail cannot stabilize.
  const auto f = disk_fn([](cd z) {
    const double m = std::abs(z) > 0.99995 ? 1.0 : 0.0;
    return std::polar(1.0, m * std::arg(z));
  });
  CHECK_THROWS_AS(limit_index_W(f, RadiusSchedule::geometric()), InconclusiveError);
}

TEST_CASE("invertibility probe reads margins off the tail circles") {
  SUBCASE("unimodular constants pass any reasonable threshold") {
    const auto report = invertibility_probe(disk_fn([](cd) { return cd(1.0, 0.0); }),
                                            RadiusSchedule::geometric());
    CHECK(report.invertible);
    CHECK(report.worst_tail_margin == doctest::Approx(1.0));
    CHECK(report.curve.size() == RadiusSchedule::geometric().radii.size());
  }
  SUBCASE("a boundary zero pulls the tail margin under delta") {
    // |1 - z| dips to 1 - r on each circle; the tail sits near 3e-5.
    const auto report = invertibility_probe(disk_fn([](cd z) { return 1.0 - z; }),
                                            RadiusSchedule::geometric());
    CHECK_FALSE(report.invertible);
    CHECK(report.worst_tail_margin == doctest::Approx(1.0 / 32768.0).epsilon(0.05));
    CHECK(report.delta == 1e-4);
  }
  SUBCASE("an interior zero keeps deep margins healthy") {
    const auto report = invertibility_probe(disk_fn([](cd z) { return z; }),
                                            RadiusSchedule::geometric());
    CHECK(report.invertible);
    CHECK(report.worst_tail_margin > 0.999);
  }
}

TEST_CASE("determinants reduce matrix functions to scalars") {
  SUBCASE("diagonal") {
    const auto f = BoundaryFunction::matrix(Coordinate::disk, 2, 2, [](cd) {
      Eigen::MatrixXcd m(2, 2);
      m << cd(2.0, 0.0), cd(0.0, 0.0), cd(0.0, 0.0), cd(3.0, 0.0);
      return m;
    });
    const auto det = det_boundary(f);
    CHECK(det.is_scalar());
    CHECK(std::abs(det.eval_scalar(cd(0.1, 0.1)) - cd(6.0, 0.0)) < 1e-14);
  }
  SUBCASE("cofactor expansion at a point") {
    const auto f = BoundaryFunction::matrix(Coordinate::disk, 2, 2, [](cd z) {
      Eigen::MatrixXcd m(2, 2);
      m << z, cd(1.0, 0.0), cd(2.0, 0.0), z;
      return m;
    });
    const auto det = det_boundary(f);
    const cd z(0.3, 0.0);
    CHECK(std::abs(det.eval_scalar(z) - (z * z - 2.0)) < 1e-14);
    // Both zeros of z^2 - 2 lie outside the unit disk.
    const auto res = winding_on_circle(det, 0.9);
    CHECK(res.converged);
    CHECK(res.winding == 0);
  }
  SUBCASE("3x3 goes through the LU path") {
    const auto f = BoundaryFunction::matrix(Coordinate::disk, 3, 3, [](cd z) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(3, 3);
      m(0, 0) = z;
      m(1, 1) = z - 0.5;
      m(2, 2) = 2.0;
      return m;
    });
    const auto det = det_boundary(f);
    const cd z(0.25, 0.25);
    CHECK(std::abs(det.eval_scalar(z) - z * (z - 0.5) * 2.0) < 1e-13);
  }
  SUBCASE("scalar passthrough keeps hints") {
    auto f = disk_fn([](cd z) { return z; });
    f.oscillation_rate = 2.5;
    const auto det = det_boundary(f);
    CHECK(det.oscillation_rate == doctest::Approx(2.5));
  }
}

}  // namespace
}  // namespace nugap
