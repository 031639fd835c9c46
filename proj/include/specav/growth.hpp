#pragma once

#include <utility>
#include <vector>

namespace specav {

// Radius schedule r(t) controlling how fast averaging balls grow along a ray.
// Three families: r(t) = sqrt(t), the linear family r_eps(t) = eps*t with
// eps in (0,1/2), and a user table interpolated linearly between knots.
// All are nondecreasing; sqrt/linear tend to infinity with t.
class GrowthFunction {
 public:
  enum class Kind { sqrt_t, linear, custom };

  static GrowthFunction sqrt();
  static GrowthFunction linear(double eps);
  // knots: (t, r) pairs, strictly increasing in t, nondecreasing in r.
  // Evaluation clamps to the end values outside the knot range.
  static GrowthFunction custom(std::vector<std::pair<double, double>> knots);

  double operator()(double t) const;

  Kind kind() const { return kind_; }
  double eps() const { return eps_; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  GrowthFunction() = default;
  Kind kind_ = Kind::sqrt_t;
  double eps_ = 0.0;
  std::vector<std::pair<double, double>> knots_;
};

// Geometrically spaced (t, r(t)) pairs: n_steps values of t from t_min to
// t_max inclusive, each paired with the growth function's radius.
std::vector<std::pair<double, double>> schedule(const GrowthFunction& growth,
                                                double t_min, double t_max,
                                                int n_steps);

// The default ray schedule used by the averaging drivers: eight geometric
// t values per decade across [t_min, t_max].
std::vector<std::pair<double, double>> default_schedule(
    const GrowthFunction& growth, double t_min = 1e2, double t_max = 1e5);

}  // namespace specav
