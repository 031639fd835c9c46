#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "specav/errors.hpp"
#include "specav/growth.hpp"

namespace specav {

using Index = std::int64_t;
using LatticePoint = Eigen::Matrix<Index, Eigen::Dynamic, 1>;
using LatticePointRef = Eigen::Map<const LatticePoint>;
using Complex = std::complex<double>;

// All integer points of the closed Euclidean ball B(center, radius),
// enumerated exactly and stored in lexicographic order. `ambiguous` counts
// points whose squared distance to the center lies within a 2^-40 relative
// band of radius^2; membership there depends on below-band perturbations of
// the inputs. Ties |chi - center| = radius are included (closed ball).
struct LatticeBall {
  Eigen::VectorXd center;
  double radius = 0.0;
  int d = 0;
  std::vector<Index> flat;  // d-strided coordinates, lexicographic
  std::size_t count = 0;
  double continuous_volume = 0.0;
  std::size_t ambiguous = 0;

  LatticePointRef point(std::size_t i) const {
    return LatticePointRef(flat.data() + static_cast<std::ptrdiff_t>(i) * d, d);
  }
};

// Volume of the Euclidean d-ball of the given radius.
double ball_volume(int d, double radius);

// Exact enumeration. Boundary decisions are made on |chi - c|^2 - r^2
// evaluated with error-free transformations (exact for any double inputs);
// the guard band only flags, never changes, a decision.
// Throws resource_limit_error when the estimated point count exceeds
// max_points (default 1e8).
LatticeBall enumerate_ball(const Eigen::VectorXd& center, double radius,
                           std::size_t max_points = 100'000'000);

enum class Normalization { count, volume };

// Sum of f over the ball's points in stored (lexicographic) order, divided
// by the point count or the continuous volume. The fixed order makes the
// result bit-reproducible regardless of how callers parallelize.
template <class F>
Complex ball_average(const LatticeBall& ball, F&& f,
                     Normalization norm = Normalization::count) {
  if (norm == Normalization::count && ball.count == 0)
    throw std::domain_error("ball_average: empty ball with count normalization");
  if (norm == Normalization::volume && !(ball.continuous_volume > 0.0))
    throw std::domain_error("ball_average: zero-volume ball with volume normalization");
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < ball.count; ++i) sum += f(ball.point(i));
  const double normalizer = norm == Normalization::count
                                ? static_cast<double>(ball.count)
                                : ball.continuous_volume;
  return sum / normalizer;
}

}  // namespace specav
