#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nugap/errors.hpp"
#include "nugap/ncf.hpp"
#include "nugap/nu_metric.hpp"
#include "nugap/plant.hpp"

namespace nugap {
namespace {

using cd = std::complex<double>;

DelayRationalPlant zero_family(double T, double b, double a) {
  return DelayRationalPlant(T, Polynomial({-a, 1.0}), Polynomial({-b, 1.0}));
}

DelayRationalPlant pole_family(double T, double a) {
  return DelayRationalPlant(T, Polynomial({0.0, 1.0}), Polynomial({-a, 1.0}));
}

TEST_CASE("cross gram matches the hand value and the axis identity") {
  const CoprimePair g1 = normalized_coprime_factorization(zero_family(1.0, 1.0, 3.0));
  const CoprimePair g2 = normalized_coprime_factorization(zero_family(1.0, 1.0, 3.2));
  const BoundaryFunction f = cross_gram(g1, g2);
  const BoundaryFunction g = parallel_residual(g1, g2);

  CHECK(f.is_scalar());
  CHECK(std::abs(f.eval_scalar(cd(0.0, 1.0)) -
                 cd(0.9990554952992897, 0.03721011474830532)) < 1e-12);
  CHECK(std::abs(g.eval_scalar(cd(0.0, 0.0)) - cd(0.018864566947613625, 0.0)) < 1e-12);

  // On the axis the pair (f, g) is a row of a unitary: |f|^2 + |g|^2 = 1.
  for (const double w : {0.0, 0.3, 1.0, 5.0, 40.0}) {
    const cd s(0.0, w);
    const double total =
        std::norm(f.eval_scalar(s)) + std::norm(g.eval_scalar(s));
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Equal delays cancel: no oscillation hint survives.
  CHECK(f.oscillation_rate == 0.0);
  CHECK(f.real_symmetric);
  // The residual decays rationally: its tail limit is the coefficient ratio.
  REQUIRE(g.tail_limit.has_value());
  CHECK(*g.tail_limit == doctest::Approx(0.0));
}

TEST_CASE("delay mismatch shows up as an oscillation hint on the gram") {
  const CoprimePair g1 = normalized_coprime_factorization(zero_family(1.0, 1.0, 3.0));
  const CoprimePair g2 = normalized_coprime_factorization(zero_family(1.5, 1.0, 3.0));
  CHECK(cross_gram(g1, g2).oscillation_rate == doctest::Approx(0.5));
}

TEST_CASE("closed form for zero uncertainty") {
  SUBCASE("interior peak") {
    const auto res = closed_form_zero_uncertainty(1.0, 1.0, 3.0, 3.2);
    CHECK(res.kind == UncertaintyCase::interior_peak);
    CHECK(res.value == doctest::Approx(0.024099762261365759).epsilon(1e-14));
    CHECK(res.discriminant == doctest::Approx(69.92));
    CHECK(res.lemma_positive);
    CHECK(res.positivity_margin > 0.0);
  }
  SUBCASE("peak at omega zero") {
    const auto res = closed_form_zero_uncertainty(1.0, 1.0, 0.5, 0.6);
    CHECK(res.kind == UncertaintyCase::zero_peak);
    CHECK(res.value == doctest::Approx(0.07669649888473704).epsilon(1e-14));
    CHECK(res.discriminant < 0.0);
    CHECK(res.lemma_positive);
  }
  SUBCASE("equal zeros give distance zero") {
    CHECK(closed_form_zero_uncertainty(0.5, 1.0, 2.0, 2.0).value == 0.0);
  }
  SUBCASE("the two branches agree across the discriminant boundary") {
    // With b = 1, a1 = 1.2 the discriminant vanishes at a2^2 = 1 + 4/(a1^2-1).
    const double a1 = 1.2;
    const double a2 = std::sqrt(1.0 + 4.0 / (a1 * a1 - 1.0));
    const double lo = closed_form_zero_uncertainty(1.0, 1.0, a1, a2 - 1e-9).value;
    const double hi = closed_form_zero_uncertainty(1.0, 1.0, a1, a2 + 1e-9).value;
    CHECK(lo == doctest::Approx(hi).epsilon(1e-7));
  }
  SUBCASE("domain checks") {
    CHECK_THROWS_AS(closed_form_zero_uncertainty(-1.0, 1.0, 3.0, 3.2), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_zero_uncertainty(1.0, 0.0, 3.0, 3.2), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_zero_uncertainty(1.0, -2.0, 3.0, 3.2), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_zero_uncertainty(1.0, 1.0, 1.0, 3.2), std::invalid_argument);
  }
}

TEST_CASE("closed form for pole uncertainty") {
  CHECK(closed_form_pole_uncertainty(1.0, 1.05) ==
        doctest::Approx(0.017246506858208476).epsilon(1e-14));
  CHECK(closed_form_pole_uncertainty(2.0, 2.0) == 0.0);
  CHECK(closed_form_pole_uncertainty(1.0, 3.0) == doctest::Approx(0.5 / std::sqrt(2.0)));
  CHECK_THROWS_AS(closed_form_pole_uncertainty(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_pole_uncertainty(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("positivity scan of the gram's real part") {
  const auto grid = boundary_probe_points({0.9, 0.99}, 64, 33, 1e6);
  CHECK(grid.size() == 2 * 64 + 33);
  for (const auto& s : grid) CHECK(s.real() >= 0.0);

  const auto report = lemma_positivity_check(1.0, 1.0, 3.0, 3.2, grid);
  CHECK(report.positive);
  CHECK(report.min_real > 0.0);
  CHECK(report.points == static_cast<long>(grid.size()));

  CHECK_THROWS_AS(lemma_positivity_check(1.0, 1.0, 3.0, 3.2, {}), std::invalid_argument);
  CHECK_THROWS_AS(lemma_positivity_check(1.0, 1.0, 3.0, 3.2, {cd(-1.0, 0.0)}),
                  std::invalid_argument);
}

TEST_CASE("metric reproduces the interior-peak closed form") {
  const auto p1 = zero_family(1.0, 1.0, 3.0);
  const auto p2 = zero_family(1.0, 1.0, 3.2);
  const NuResult res = nu_metric(p1, p2);

  CHECK(res.branch == Branch::norm_branch);
  CHECK(res.route == Route::limit_route);
  CHECK(res.invertible);
  REQUIRE(res.winding.has_value());
  CHECK(*res.winding == 0);
  CHECK_FALSE(res.rho.has_value());
  CHECK(res.value == doctest::Approx(0.024099762261365759).epsilon(1e-10));

  REQUIRE(res.norm_search.has_value());
  // The sup sits at omega^2 = sqrt((a1^2-1)(a2^2-1))/2 - 1.
  const double peak = std::sqrt(std::sqrt(8.0 * 9.24) / 2.0 - 1.0);
  CHECK(std::abs(res.norm_search->argmax_omega) == doctest::Approx(peak).epsilon(1e-6));
  CHECK(res.margin_curve.size() == RadiusSchedule::geometric().radii.size());
  for (const auto& scan : res.margin_curve) {
    CHECK(scan.converged);
    CHECK(scan.min_modulus > 0.1);
  }
}

TEST_CASE("metric reproduces the zero-peak closed form") {
  const NuResult res = nu_metric(zero_family(1.0, 1.0, 0.5), zero_family(1.0, 1.0, 0.6));
  CHECK(res.branch == Branch::norm_branch);
  CHECK(res.value == doctest::Approx(0.07669649888473704).epsilon(1e-10));
  REQUIRE(res.norm_search.has_value());
  CHECK(std::abs(res.norm_search->argmax_omega) < 1e-3);
}

TEST_CASE("metric reproduces the pole closed form") {
  const NuResult res = nu_metric(pole_family(1.0, 1.0), pole_family(1.0, 1.05));
  CHECK(res.branch == Branch::norm_branch);
  CHECK(res.value == doctest::Approx(0.017246506858208476).epsilon(1e-10));
}

TEST_CASE("identical plants are at distance exactly zero") {
  const auto p = zero_family(1.0, 1.0, 3.0);
  const NuResult res = nu_metric(p, p);
  CHECK(res.branch == Branch::norm_branch);
  CHECK(res.value == 0.0);
}

TEST_CASE("metric is symmetric") {
  const auto p1 = zero_family(1.0, 1.0, 3.0);
  const auto p2 = zero_family(1.0, 1.0, 3.2);
  const double d12 = nu_metric(p1, p2).value;
  const double d21 = nu_metric(p2, p1).value;
  CHECK(std::abs(d12 - d21) < 1e-9);
}

TEST_CASE("pure delay mismatch cannot stabilize at the default depth") {
  const auto p1 = zero_family(1.0, 1.0, 3.0);
  const auto p2 = zero_family(1.5, 1.0, 3.0);
  CHECK_THROWS_AS(nu_metric(p1, p2), InconclusiveError);
}

TEST_CASE("pure delay mismatch collapses the margins when pushed deep") {
  MetricOptions options;
  options.r_max = 1.0 - std::pow(2.0, -31);
  const NuResult res = nu_metric(zero_family(1.0, 1.0, 3.0), zero_family(1.5, 1.0, 3.0),
                                 options);
  CHECK(res.branch == Branch::unity_branch);
  CHECK(res.value == 1.0);
  CHECK_FALSE(res.invertible);
  CHECK_FALSE(res.winding.has_value());
  CHECK_FALSE(res.norm_search.has_value());
  // The margin curve decays below delta on the tail.
  const std::size_t n = res.margin_curve.size();
  REQUIRE(n >= 8);
  for (std::size_t k = n - 4; k < n; ++k)
    CHECK(res.margin_curve[k].min_modulus < options.delta);
  CHECK(res.margin_curve.front().min_modulus > 0.1);
}

TEST_CASE("fixed annulus route agrees with the limit route here") {
  const auto p1 = zero_family(1.0, 1.0, 3.0);
  const auto p2 = zero_family(1.0, 1.0, 3.2);
  const NuResult limit = nu_metric(p1, p2);
  for (const double rho : {0.9, 0.99}) {
    const NuResult fixed = nu_metric_fixed_rho(p1, p2, rho);
    CHECK(fixed.route == Route::fixed_rho_route);
    REQUIRE(fixed.rho.has_value());
    CHECK(*fixed.rho == rho);
    CHECK(fixed.branch == limit.branch);
    CHECK(std::abs(fixed.value - limit.value) < 1e-6);
    // Every assessed circle lies inside the annulus.
    for (const auto& scan : fixed.margin_curve) CHECK(scan.r > rho);
  }
  CHECK_THROWS_AS(nu_metric_fixed_rho(p1, p2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(nu_metric_fixed_rho(p1, p2, 1.0), std::invalid_argument);
}

TEST_CASE("validated factor pairs run through the generic matrix path") {
  auto constant = [](double value) {
    return BoundaryFunction::scalar(Coordinate::halfplane,
                                    [value](cd) { return cd(value, 0.0); });
  };
  const CoprimePair iso = CoprimePair::from_functions(1, 1, constant(0.6), constant(0.8),
                                                      constant(0.6), constant(0.8));
  const NuResult res = nu_metric(iso, iso);
  CHECK(res.branch == Branch::norm_branch);
  CHECK(res.value == doctest::Approx(0.0));

  const CoprimePair skew = CoprimePair::from_functions(1, 1, constant(0.8), constant(0.6),
                                                       constant(0.8), constant(0.6));
  const NuResult cross = nu_metric(iso, skew);
  CHECK(cross.branch == Branch::norm_branch);
  CHECK(cross.invertible);
  // Gram 0.6*0.8 + 0.8*0.6 = 0.96 stays invertible; the residual is
  // -Dtilde2 N1 + Ntilde2 D1 = -0.6*0.6 + 0.8*0.8 = 0.28 at every frequency.
  CHECK(cross.value == doctest::Approx(0.28).epsilon(1e-12));

  const CoprimePair bad = CoprimePair::from_functions(1, 1, constant(0.6), constant(0.7),
                                                      constant(0.6), constant(0.7));
  CHECK_THROWS_AS(nu_metric(bad, iso), std::invalid_argument);
}

TEST_CASE("metric options are validated") {
  const auto p1 = zero_family(1.0, 1.0, 3.0);
  const auto p2 = zero_family(1.0, 1.0, 3.2);
  MetricOptions bad_delta;
  bad_delta.delta = 0.0;
  CHECK_THROWS_AS(nu_metric(p1, p2, bad_delta), std::invalid_argument);
  MetricOptions shallow;
  shallow.r_max = 0.5;
  CHECK_THROWS_AS(nu_metric(p1, p2, shallow), std::invalid_argument);
  MetricOptions stab;
  stab.stabilization_count = 0;
  CHECK_THROWS_AS(nu_metric(p1, p2, stab), std::invalid_argument);
}

}  // namespace
}  // namespace nugap
