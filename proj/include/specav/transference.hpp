#pragma once

#include <Eigen/Dense>
#include <vector>

#include "specav/growth.hpp"
#include "specav/symbol.hpp"

namespace specav {

// Radial profile h with h = 1 on [0, 1/8], h = 0 on [1/4, inf), smoothly
// stepped in between by the exp(-1/x) construction. Only Fourier-side
// values are ever needed: phi_hat(xi) = h(|xi|).
class BumpSpec {
 public:
  static constexpr double kInnerRadius = 0.125;
  static constexpr double kOuterRadius = 0.25;

  double h(double rho) const;
  double phi_hat(const Eigen::VectorXd& xi) const { return h(xi.norm()); }
};

BumpSpec make_bump();

// Finite-difference smoothness probe of the profile: estimates the largest
// jump of h, h', h'' over the transition zone. All three stay small for a
// genuinely C^2 step.
struct BumpSmoothnessReport {
  double max_jump_h = 0.0;
  double max_jump_dh = 0.0;
  double max_jump_d2h = 0.0;
  bool monotone = false;  // nonincreasing across the transition
};

BumpSmoothnessReport check_bump_smoothness(const BumpSpec& bump, int samples = 4096);

// The Euclidean extension of a lattice symbol: at xi the only term that can
// survive is the lattice point within distance 1/4 (unique, since the
// lattice spacing exceeds twice the bump support radius).
class ExtendedSymbol {
 public:
  ExtendedSymbol(SymbolPtr base, BumpSpec bump);
  Complex eval(const Eigen::VectorXd& xi) const;
  int dimension() const { return base_->dimension(); }
  const SymbolPtr& base() const { return base_; }

 private:
  SymbolPtr base_;
  BumpSpec bump_;
};

// c1 = integral of phi_hat over B(0, 1/4) intersected with the unit cube
// cornered at the origin; by radial symmetry this is 2^-d times the full
// integral, evaluated by adaptive quadrature on the radial profile.
double bump_corner_mass(const BumpSpec& bump, int d, double tol = 1e-8);

struct TransferenceReport {
  double t = 0.0;
  double r = 0.0;
  double c1 = 0.0;
  double c = 0.0;  // 2^d c1
  Complex continuous_avg;  // midpoint-quadrature mean of the extension
  Complex lattice_avg;     // volume-normalized lattice mean of the base symbol
  Complex scaled_lattice_avg;  // c * lattice_avg
  double residual = 0.0;       // |continuous_avg - scaled_lattice_avg|
  std::size_t lattice_count = 0;
  std::size_t quadrature_cells = 0;
};

// Checks that the continuous-ball mean of the extension matches
// c * (volume-normalized lattice mean) at one t. points_per_unit below 8
// under-resolves the bump and is refused.
TransferenceReport transference_average_check(const SymbolPtr& sigma,
                                              const Eigen::VectorXd& omega,
                                              const GrowthFunction& growth, double t,
                                              int points_per_unit = 16,
                                              std::size_t max_cells = 100'000'000);

// The same check along a t-schedule, for trend reporting.
std::vector<TransferenceReport> transference_trend(const SymbolPtr& sigma,
                                                   const Eigen::VectorXd& omega,
                                                   const GrowthFunction& growth,
                                                   const std::vector<double>& t_values,
                                                   int points_per_unit = 16,
                                                   std::size_t max_cells = 100'000'000);

}  // namespace specav
