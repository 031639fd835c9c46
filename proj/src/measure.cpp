#include "specav/measure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace specav {
namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_to_canonical(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

}  // namespace

AtomicMeasure::AtomicMeasure(int d, std::vector<Atom> atoms)
    : d_(d), atoms_(std::move(atoms)) {
  if (d_ <= 0) throw std::invalid_argument("AtomicMeasure: dimension must be >= 1");
  for (auto& atom : atoms_) {
    if (atom.tau.size() != d_)
      throw std::invalid_argument("AtomicMeasure: atom position has wrong dimension");
    for (int i = 0; i < d_; ++i) atom.tau[i] = wrap_to_canonical(atom.tau[i]);
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    for (std::size_t j = i + 1; j < atoms_.size(); ++j)
      if (torus_distance(atoms_[i].tau, atoms_[j].tau) <= 1e-9)
        throw std::invalid_argument(
            "AtomicMeasure: atoms " + std::to_string(i) + " and " +
            std::to_string(j) + " are closer than 1e-9 on the torus");
}

AtomicMeasure AtomicMeasure::dirac(const Eigen::VectorXd& tau, Complex mass) {
  return AtomicMeasure(static_cast<int>(tau.size()), {Atom{tau, mass}});
}

double torus_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("torus_distance: dimension mismatch");
  double sq = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double diff = std::remainder(a[i] - b[i], kTwoPi);
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

Complex atomic_fourier(const AtomicMeasure& mu, LatticePointRef chi) {
  Complex value(0.0, 0.0);
  for (const auto& atom : mu.atoms()) {
    double phase = 0.0;
    for (int i = 0; i < mu.dimension(); ++i)
      phase += static_cast<double>(chi[i]) * atom.tau[i];
    value += atom.mass * std::polar(1.0, -phase);
  }
  return value;
}

double autocorrelation_mass(const AtomicMeasure& mu) {
  double total = 0.0;
  for (const auto& atom : mu.atoms()) total += std::norm(atom.mass);
  return total;
}

}  // namespace specav
