#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "specav/lattice.hpp"

namespace specav {

struct Atom {
  Eigen::VectorXd tau;  // position on the torus, canonicalized to [0, 2pi)^d
  Complex mass;
};

// A finite list of weighted point masses on the d-torus. Positions are
// canonicalized modulo 2pi; pairs closer than 1e-9 in the torus metric are
// rejected rather than merged so test-construction bugs stay visible.
class AtomicMeasure {
 public:
  AtomicMeasure(int d, std::vector<Atom> atoms);
  static AtomicMeasure dirac(const Eigen::VectorXd& tau, Complex mass = {1.0, 0.0});
  static AtomicMeasure zero(int d) { return AtomicMeasure(d, {}); }

  int dimension() const { return d_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  int d_;
  std::vector<Atom> atoms_;
};

// Componentwise distance on the torus [0,2pi)^d (each coordinate wrapped to
// (-pi, pi] before taking the Euclidean norm).
double torus_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Fourier transform of the measure at a lattice frequency:
// sum_j mass_j * exp(-i <chi, tau_j>).
Complex atomic_fourier(const AtomicMeasure& mu, LatticePointRef chi);

// Mass of the autocorrelation mu * mu-flip at the origin: sum_j |mass_j|^2.
double autocorrelation_mass(const AtomicMeasure& mu);

}  // namespace specav
