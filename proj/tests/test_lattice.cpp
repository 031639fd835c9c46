#include <doctest.h>

#include <random>

#include "specav/lattice.hpp"
#include "support/oracles.hpp"

using namespace specav;

namespace {

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

}  // namespace

TEST_CASE("radius 1.5 ball at the origin has 9 points in d=2") {
  const auto ball = enumerate_ball(vec2(0.0, 0.0), 1.5);
  CHECK(ball.count == 9);  // brute-force scan of [-2,2]^2
  CHECK(ball.ambiguous == 0);
}

TEST_CASE("off-center small ball keeps only the origin") {
  const auto ball = enumerate_ball(vec2(0.3, 0.0), 0.5);
  REQUIRE(ball.count == 1);
  CHECK(ball.point(0)[0] == 0);
  CHECK(ball.point(0)[1] == 0);
}

TEST_CASE("degenerate radius keeps an integral center") {
  Eigen::VectorXd c(3);
  c << 0.0, 0.0, 0.0;
  const auto ball = enumerate_ball(c, 0.0);
  REQUIRE(ball.count == 1);
  CHECK(ball.point(0).isZero());
}

TEST_CASE("boundary ties are included (closed ball)") {
  const auto ball = enumerate_ball(vec2(0.0, 0.0), 5.0);
  // (3,4), (5,0) and friends sit exactly on the boundary
  bool has_34 = false, has_50 = false;
  for (std::size_t i = 0; i < ball.count; ++i) {
    if (ball.point(i)[0] == 3 && ball.point(i)[1] == 4) has_34 = true;
    if (ball.point(i)[0] == 5 && ball.point(i)[1] == 0) has_50 = true;
  }
  CHECK(has_34);
  CHECK(has_50);
}

TEST_CASE("enumeration agrees with the box-scan oracle on random balls") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> center_dist(-20.0, 20.0);
  std::uniform_real_distribution<double> radius_dist(5.0, 50.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    Eigen::VectorXd c(d);
    for (int i = 0; i < d; ++i) c[i] = center_dist(rng);
    const double r = radius_dist(rng);
    const auto ball = enumerate_ball(c, r);
    const auto expected = oracle::box_scan_ball(c, r);
    REQUIRE(ball.count == expected.size());
    for (std::size_t i = 0; i < ball.count; ++i)
      for (int k = 0; k < d; ++k)
        CHECK(ball.point(i)[k] == expected[i][k]);  // both lexicographic
  }
}

TEST_CASE("count approaches continuous volume (Gauss circle regime)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> center_dist(-5.0, 5.0);
  for (int d = 2; d <= 3; ++d) {
    for (double r : {30.0, 47.0, 80.0}) {
      Eigen::VectorXd c(d);
      for (int i = 0; i < d; ++i) c[i] = center_dist(rng);
      const auto ball = enumerate_ball(c, r);
      const double ratio = static_cast<double>(ball.count) / ball.continuous_volume;
      CHECK(ratio > 0.9);
      CHECK(ratio < 1.1);
    }
  }
}

TEST_CASE("lexicographic point order") {
  const auto ball = enumerate_ball(vec2(0.2, -0.4), 7.3);
  for (std::size_t i = 1; i < ball.count; ++i) {
    const auto a = ball.point(i - 1);
    const auto b = ball.point(i);
    const bool less = a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    CHECK(less);
  }
}

TEST_CASE("ball_average normalizations differ by count/volume exactly") {
  const auto ball = enumerate_ball(vec2(3.0, -2.0), 12.5);
  const auto f = [](LatticePointRef chi) {
    return Complex(static_cast<double>(chi[0] + 2 * chi[1]), 0.5);
  };
  const Complex by_count = ball_average(ball, f, Normalization::count);
  const Complex by_volume = ball_average(ball, f, Normalization::volume);
  const double factor = static_cast<double>(ball.count) / ball.continuous_volume;
  CHECK(std::abs(by_volume - by_count * factor) <= 1e-15 * std::abs(by_volume));
}

TEST_CASE("constant symbol averages to the constant exactly") {
  const auto ball = enumerate_ball(vec2(100.0, 50.0), 20.0);
  const Complex avg =
      ball_average(ball, [](LatticePointRef) { return Complex(2.5, -1.0); });
  CHECK(avg == Complex(2.5, -1.0));
}

TEST_CASE("empty ball with count normalization is a domain error") {
  const auto ball = enumerate_ball(vec2(0.5, 0.5), 0.2);
  REQUIRE(ball.count == 0);
  CHECK_THROWS_AS(ball_average(ball, [](LatticePointRef) { return Complex(1.0, 0.0); }),
                  std::domain_error);
}

TEST_CASE("dimension and radius validation") {
  CHECK_THROWS_AS(enumerate_ball(Eigen::VectorXd(), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_ball(vec2(0, 0), -1.0), std::invalid_argument);
}

TEST_CASE("point-count cap raises a resource-limit error naming the cap") {
  try {
    enumerate_ball(vec2(0.0, 0.0), 1e6, 1000);
    FAIL("expected resource_limit_error");
  } catch (const resource_limit_error& e) {
    CHECK(std::string(e.what()).find("1000") != std::string::npos);
  }
}

TEST_CASE("orthant fraction along e1 is near one half") {
  // exact count of lattice points with chi_2 >= 0 in a ball at (1e6, 0)
  const auto ball = enumerate_ball(vec2(1e6, 0.0), 1e3);
  std::size_t nonneg = 0;
  for (std::size_t i = 0; i < ball.count; ++i)
    if (ball.point(i)[1] >= 0) ++nonneg;
  const double fraction = static_cast<double>(nonneg) / static_cast<double>(ball.count);
  CHECK(fraction == doctest::Approx(0.5).epsilon(0.01));
}
