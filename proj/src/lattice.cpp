#include "specav/lattice.hpp"

#include <cmath>
#include <string>

namespace specav {
namespace {

// Error-free transformations. two_sum and two_prod (via fma) represent the
// exact result of a double operation as hi + lo.
struct Dd {
  double hi = 0.0, lo = 0.0;
};

inline Dd two_sum(double a, double b) {
  const double s = a + b;
  const double bp = s - a;
  const double ap = s - bp;
  return {s, (a - ap) + (b - bp)};
}

inline Dd two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline void dd_add(Dd& acc, double hi, double lo) {
  const Dd s = two_sum(acc.hi, hi);
  acc.lo += s.lo + lo;
  acc.hi = s.hi;
}

// |chi - c|^2 - r^2 as a double-double; exact up to one rounding in the
// low word, which is far below the 2^-40 guard band.
double signed_excess(const Index* chi, const Eigen::VectorXd& c, double r) {
  Dd acc;
  for (int i = 0; i < c.size(); ++i) {
    const Dd diff = two_sum(static_cast<double>(chi[i]), -c[i]);
    const Dd sq = two_prod(diff.hi, diff.hi);
    dd_add(acc, sq.hi, sq.lo);
    // cross and low-order terms of (hi + lo)^2
    dd_add(acc, 2.0 * diff.hi * diff.lo, diff.lo * diff.lo);
  }
  const Dd r2 = two_prod(r, r);
  dd_add(acc, -r2.hi, -r2.lo);
  return acc.hi + acc.lo;
}

struct EnumState {
  const Eigen::VectorXd& center;
  double radius;
  std::size_t cap;
  LatticeBall& out;
  std::vector<Index> current;
  double guard_band;
};

// Recurse coordinate by coordinate; candidate ranges come from a padded
// float bound, the exact test runs once per candidate leaf.
void enumerate_rec(EnumState& st, int k, double prefix_sq) {
  const int d = static_cast<int>(st.center.size());
  const double rem_sq = st.radius * st.radius - prefix_sq;
  const double w = std::sqrt(std::max(0.0, rem_sq)) + 1e-9 * (1.0 + st.radius);
  const double c = st.center[k];
  const Index lo = static_cast<Index>(std::ceil(c - w));
  const Index hi = static_cast<Index>(std::floor(c + w));
  for (Index x = lo; x <= hi; ++x) {
    st.current[static_cast<std::size_t>(k)] = x;
    if (k + 1 < d) {
      const double diff = static_cast<double>(x) - c;
      enumerate_rec(st, k + 1, prefix_sq + diff * diff);
    } else {
      const double excess = signed_excess(st.current.data(), st.center, st.radius);
      if (excess <= 0.0) {
        if (st.out.count >= st.cap)
          throw resource_limit_error(
              "enumerate_ball: point-count cap of " + std::to_string(st.cap) +
              " exceeded");
        st.out.flat.insert(st.out.flat.end(), st.current.begin(), st.current.end());
        ++st.out.count;
      }
      if (std::abs(excess) <= st.guard_band) ++st.out.ambiguous;
    }
  }
}

}  // namespace

double ball_volume(int d, double radius) {
  if (d <= 0) throw std::invalid_argument("ball_volume: dimension must be >= 1");
  return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0) *
         std::pow(radius, d);
}

LatticeBall enumerate_ball(const Eigen::VectorXd& center, double radius,
                           std::size_t max_points) {
  const int d = static_cast<int>(center.size());
  if (d <= 0) throw std::invalid_argument("enumerate_ball: dimension must be >= 1");
  if (!(radius >= 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("enumerate_ball: radius must be finite and >= 0");
  for (int i = 0; i < d; ++i)
    if (!std::isfinite(center[i]))
      throw std::invalid_argument("enumerate_ball: center must be finite");

  // Every lattice point of the ball owns a unit cell inside the ball grown
  // by half a cell diagonal, so this bounds the count from above.
  const double est = ball_volume(d, radius + 0.5 * std::sqrt(double(d)) + 1.0);
  if (est > static_cast<double>(max_points))
    throw resource_limit_error(
        "enumerate_ball: point-count cap of " + std::to_string(max_points) +
        " exceeded (estimated " + std::to_string(est) + " points)");

  LatticeBall ball;
  ball.center = center;
  ball.radius = radius;
  ball.d = d;
  ball.continuous_volume = ball_volume(d, radius);

  EnumState st{center, radius, max_points, ball,
               std::vector<Index>(static_cast<std::size_t>(d)),
               std::pow(2.0, -40) * std::max(1.0, radius * radius)};
  enumerate_rec(st, 0, 0.0);
  return ball;
}

}  // namespace specav
