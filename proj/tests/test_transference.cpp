#include <doctest.h>

#include <random>

#include "specav/transference.hpp"

using namespace specav;

namespace {

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

}  // namespace

TEST_CASE("bump profile plateau, support, and transition") {
  const BumpSpec bump = make_bump();
  CHECK(bump.h(0.0) == 1.0);
  CHECK(bump.h(0.1) == 1.0);
  CHECK(bump.h(0.125) == 1.0);
  CHECK(bump.h(0.25) == 0.0);
  CHECK(bump.h(0.3) == 0.0);
  const double mid = bump.h(3.0 / 16.0);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double rho = 0.125 + 0.125 * i / 100.0;
    const double v = bump.h(rho);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("bump profile is C^2 to finite-difference resolution") {
  const auto report = check_bump_smoothness(make_bump());
  CHECK(report.monotone);
  CHECK(report.max_jump_h < 1e-2);
  CHECK(report.max_jump_dh < 1.0);
  CHECK(report.max_jump_d2h < 300.0);  // second differences stay bounded
}

TEST_CASE("extension at lattice points and cell centers") {
  const auto one = constant(2, {1.0, 0.0});
  const ExtendedSymbol ext(one, make_bump());
  CHECK(ext.eval(vec2(7.0, -3.0)) == Complex(1.0, 0.0));
  CHECK(ext.eval(vec2(7.5, -3.5)) == Complex(0.0, 0.0));  // outside every bump
}

TEST_CASE("extension near a lattice point follows the unique-neighbor rule") {
  const auto orthant = orthant_indicator(2);
  const ExtendedSymbol ext(orthant, make_bump());
  const BumpSpec bump = make_bump();
  CHECK(ext.eval(vec2(50.0, 0.05)) == Complex(1.0, 0.0));  // h(0.05) = 1
  const double expect = bump.h(0.19);
  CHECK(std::abs(ext.eval(vec2(50.0, 0.19)) - Complex(expect, 0.0)) < 1e-15);
  CHECK(ext.eval(vec2(-50.0, 0.1)) == Complex(0.0, 0.0));  // sigma = 0 there
}

TEST_CASE("unique neighbor: at most one lattice point within 1/4 of any xi") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  for (int i = 0; i < 100000; ++i) {
    const double x = coord(rng), y = coord(rng);
    int neighbors = 0;
    for (Index dx = -1; dx <= 1; ++dx)
      for (Index dy = -1; dy <= 1; ++dy) {
        const double px = std::floor(x) + static_cast<double>(dx);
        const double py = std::floor(y) + static_cast<double>(dy);
        const double dist = std::hypot(px - x, py - y);
        if (dist < 0.25) ++neighbors;
      }
    REQUIRE(neighbors <= 1);
  }
}

TEST_CASE("extension is continuous along a path through cell boundaries") {
  const auto one = constant(2, {1.0, 0.0});
  const ExtendedSymbol ext(one, make_bump());
  double max_jump = 0.0;
  Complex prev = ext.eval(vec2(2.0, 0.3));
  for (int i = 1; i <= 4000; ++i) {
    const double x = 2.0 + 1.5 * i / 4000.0;
    const Complex v = ext.eval(vec2(x, 0.3));
    max_jump = std::max(max_jump, std::abs(v - prev));
    prev = v;
  }
  CHECK(max_jump < 0.02);  // decays to 0 before the nearest point flips
}

TEST_CASE("corner mass is positive and the full bump mass is below one") {
  for (int d : {2, 3}) {
    const double c1 = bump_corner_mass(make_bump(), d);
    CHECK(c1 > 0.0);
    const double c = std::pow(2.0, d) * c1;
    CHECK(c <= 1.0);
  }
}

TEST_CASE("corner mass agrees with a planar midpoint quadrature") {
  const BumpSpec bump = make_bump();
  const double c1 = bump_corner_mass(bump, 2);
  const int q = 2000;  // cells over [0, 0.25]^2
  double sum = 0.0;
  const double cell = 0.25 / q;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      const double x = (i + 0.5) * cell;
      const double y = (j + 0.5) * cell;
      if (x * x + y * y <= 0.0625) sum += bump.h(std::hypot(x, y));
    }
  CHECK(c1 == doctest::Approx(sum * cell * cell).epsilon(1e-3));
}

TEST_CASE("constant symbol: both sides of the matching identity equal c") {
  const auto report = transference_average_check(constant(2, {1.0, 0.0}),
                                                 vec2(1.0, 0.0),
                                                 GrowthFunction::sqrt(), 1e4);
  CHECK(std::abs(report.scaled_lattice_avg.real() - report.c) < 1e-3);
  CHECK(report.residual < 2e-3);
}

TEST_CASE("orthant symbol: residual at t = 1e4 within 0.02 and shrinking") {
  // 32 points per unit: the per-cell midpoint bias (~3e-4 at 16) must sit
  // below the boundary term for the trend to be visible
  const auto trend = transference_trend(orthant_indicator(2), vec2(1.0, 0.0),
                                        GrowthFunction::sqrt(), {1e3, 1e4}, 32);
  REQUIRE(trend.size() == 2);
  CHECK(trend[1].residual <= 0.02);
  CHECK(trend[1].residual <= trend[0].residual * 1.2);  // within 20% noise
}

TEST_CASE("dirac transform reduces to the constant case") {
  const auto report = transference_average_check(
      atomic_transform(AtomicMeasure::dirac(Eigen::VectorXd::Zero(2))),
      vec2(1.0, 0.0), GrowthFunction::sqrt(), 1e4);
  CHECK(report.residual < 2e-3);
}

TEST_CASE("under-resolved quadrature and tiny radii are refused") {
  CHECK_THROWS_AS(transference_average_check(constant(2, {1.0, 0.0}), vec2(1.0, 0.0),
                                             GrowthFunction::sqrt(), 1e4, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(transference_average_check(constant(2, {1.0, 0.0}), vec2(1.0, 0.0),
                                             GrowthFunction::sqrt(), 50.0),
                  std::invalid_argument);  // r(t) < 10
}
