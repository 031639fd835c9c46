#include <doctest.h>

#include <stdexcept>

#include "specav/growth.hpp"

using namespace specav;

TEST_CASE("sqrt growth schedule hits the spec points") {
  const auto sched = schedule(GrowthFunction::sqrt(), 1e2, 1e4, 3);
  REQUIRE(sched.size() == 3);
  CHECK(sched[0].first == doctest::Approx(100.0));
  CHECK(sched[0].second == doctest::Approx(10.0));
  CHECK(sched[1].first == doctest::Approx(1000.0));
  CHECK(sched[1].second == doctest::Approx(31.6227766).epsilon(1e-9));
  CHECK(sched[2].first == doctest::Approx(10000.0));
  CHECK(sched[2].second == doctest::Approx(100.0));
}

TEST_CASE("linear growth is exactly eps * t") {
  const auto g = GrowthFunction::linear(0.1);
  CHECK(g(200.0) == 20.0);
  CHECK(g(1e6) == 1e5);
}

TEST_CASE("linear growth validates eps") {
  CHECK_THROWS_AS(GrowthFunction::linear(0.0), std::invalid_argument);
  CHECK_THROWS_AS(GrowthFunction::linear(0.5), std::invalid_argument);
  CHECK_THROWS_AS(GrowthFunction::linear(-0.1), std::invalid_argument);
}

TEST_CASE("custom growth interpolates linearly between knots and clamps") {
  const auto g = GrowthFunction::custom({{1.0, 2.0}, {3.0, 6.0}, {10.0, 6.0}});
  CHECK(g(2.0) == doctest::Approx(4.0));
  CHECK(g(1.0) == 2.0);
  CHECK(g(0.5) == 2.0);
  CHECK(g(20.0) == 6.0);
  CHECK_THROWS_AS(GrowthFunction::custom({{1.0, 2.0}, {3.0, 1.0}}),
                  std::invalid_argument);  // decreasing r
  CHECK_THROWS_AS(GrowthFunction::custom({{3.0, 1.0}, {1.0, 2.0}}),
                  std::invalid_argument);  // decreasing t
}

TEST_CASE("schedule argument validation") {
  CHECK_THROWS_AS(schedule(GrowthFunction::sqrt(), 10.0, 5.0, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(schedule(GrowthFunction::sqrt(), 1.0, 5.0, 1),
                  std::invalid_argument);
}

TEST_CASE("default schedule spans eight points per decade") {
  const auto sched = default_schedule(GrowthFunction::sqrt());
  CHECK(sched.size() == 25);
  CHECK(sched.front().first == doctest::Approx(1e2));
  CHECK(sched.back().first == doctest::Approx(1e5));
}
