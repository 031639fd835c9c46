#include "specav/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specav {

GrowthFunction GrowthFunction::sqrt() {
  GrowthFunction g;
  g.kind_ = Kind::sqrt_t;
  return g;
}

GrowthFunction GrowthFunction::linear(double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("linear growth requires eps in (0, 1/2)");
  GrowthFunction g;
  g.kind_ = Kind::linear;
  g.eps_ = eps;
  return g;
}

GrowthFunction GrowthFunction::custom(
    std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2)
    throw std::invalid_argument("custom growth needs at least two knots");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].first > knots[i - 1].first))
      throw std::invalid_argument("custom growth knots must increase in t");
    if (knots[i].second < knots[i - 1].second)
      throw std::invalid_argument("custom growth must be nondecreasing in r");
  }
  for (const auto& [t, r] : knots)
    if (!(t > 0.0) || !(r > 0.0))
      throw std::invalid_argument("custom growth knots must be positive");
  GrowthFunction g;
  g.kind_ = Kind::custom;
  g.knots_ = std::move(knots);
  return g;
}

double GrowthFunction::operator()(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("growth function needs t > 0");
  switch (kind_) {
    case Kind::sqrt_t:
      return std::sqrt(t);
    case Kind::linear:
      return eps_ * t;
    case Kind::custom: {
      if (t <= knots_.front().first) return knots_.front().second;
      if (t >= knots_.back().first) return knots_.back().second;
      auto it = std::upper_bound(
          knots_.begin(), knots_.end(), t,
          [](double v, const std::pair<double, double>& k) { return v < k.first; });
      const auto& [t1, r1] = *it;
      const auto& [t0, r0] = *(it - 1);
      const double w = (t - t0) / (t1 - t0);
      return r0 + w * (r1 - r0);
    }
  }
  return 0.0;  // unreachable
}

std::vector<std::pair<double, double>> schedule(const GrowthFunction& growth,
                                                double t_min, double t_max,
                                                int n_steps) {
  if (!(t_min > 0.0) || !(t_min < t_max))
    throw std::invalid_argument("schedule requires 0 < t_min < t_max");
  if (n_steps < 2) throw std::invalid_argument("schedule requires n_steps >= 2");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n_steps));
  const double ratio = t_max / t_min;
  for (int i = 0; i < n_steps; ++i) {
    const double t = t_min * std::pow(ratio, double(i) / double(n_steps - 1));
    out.emplace_back(t, growth(t));
  }
  out.back().first = t_max;  // pin the endpoint against pow() rounding
  out.back().second = growth(t_max);
  return out;
}

std::vector<std::pair<double, double>> default_schedule(
    const GrowthFunction& growth, double t_min, double t_max) {
  const int decades = std::max(1, int(std::round(std::log10(t_max / t_min))));
  return schedule(growth, t_min, t_max, 8 * decades + 1);
}

}  // namespace specav
