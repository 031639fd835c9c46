#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "specav/lattice.hpp"
#include "specav/measure.hpp"

namespace specav {

// A bounded function on the integer lattice Z^d. Nodes are immutable and
// freely shareable; evaluation is pure. Composite nodes (sum, product,
// conjugate, squared modulus) track a sup bound combined sub-additively /
// multiplicatively from their children.
class Symbol {
 public:
  virtual ~Symbol() = default;
  virtual Complex eval(LatticePointRef chi) const = 0;
  virtual double sup_bound() const = 0;
  virtual int dimension() const = 0;
  virtual std::string kind() const = 0;
};

using SymbolPtr = std::shared_ptr<const Symbol>;

class AtomicTransformSymbol final : public Symbol {
 public:
  explicit AtomicTransformSymbol(AtomicMeasure mu) : mu_(std::move(mu)) {}
  Complex eval(LatticePointRef chi) const override { return atomic_fourier(mu_, chi); }
  double sup_bound() const override;
  int dimension() const override { return mu_.dimension(); }
  std::string kind() const override { return "atomic"; }
  const AtomicMeasure& measure() const { return mu_; }

 private:
  AtomicMeasure mu_;
};

// Indicator of a closed orthant: 1 when sign_i * chi_i >= 0 for every axis.
// The default signs (+1,...,+1) give the indicator of [0, infinity)^d.
class OrthantIndicatorSymbol final : public Symbol {
 public:
  explicit OrthantIndicatorSymbol(std::vector<int> signs);
  Complex eval(LatticePointRef chi) const override;
  double sup_bound() const override { return 1.0; }
  int dimension() const override { return static_cast<int>(signs_.size()); }
  std::string kind() const override { return "orthant"; }
  const std::vector<int>& signs() const { return signs_; }

 private:
  std::vector<int> signs_;
};

// Value amplitude_n on the closed band |<chi, axis>| in
// [radius_n (1-width), radius_n (1+width)], zero between bands. Bands must
// be pairwise disjoint. Hard steps: only lattice values matter.
class ShellOscillatorSymbol final : public Symbol {
 public:
  ShellOscillatorSymbol(std::vector<double> amplitudes, std::vector<double> radii,
                        Eigen::VectorXd axis, double width);
  Complex eval(LatticePointRef chi) const override;
  double sup_bound() const override;
  int dimension() const override { return static_cast<int>(axis_.size()); }
  std::string kind() const override { return "shell"; }
  const std::vector<double>& amplitudes() const { return amplitudes_; }
  const std::vector<double>& radii() const { return radii_; }
  const Eigen::VectorXd& axis() const { return axis_; }
  double width() const { return width_; }

 private:
  std::vector<double> amplitudes_;
  std::vector<double> radii_;
  Eigen::VectorXd axis_;
  double width_;
};

// sigma(chi) = profile(chi / |chi|); the origin evaluates to 0 by convention.
class HomogeneousScalarSymbol final : public Symbol {
 public:
  HomogeneousScalarSymbol(std::function<Complex(const Eigen::VectorXd&)> profile,
                          int d, double bound, std::string name);
  Complex eval(LatticePointRef chi) const override;
  double sup_bound() const override { return bound_; }
  int dimension() const override { return d_; }
  std::string kind() const override { return "homogeneous"; }
  const std::string& name() const { return name_; }

 private:
  std::function<Complex(const Eigen::VectorXd&)> profile_;
  int d_;
  double bound_;
  std::string name_;
};

// Values on the grid [-extent, extent]^d, row-major with the first
// coordinate slowest. Lookups outside the extent are a domain error.
class TabulatedSymbol final : public Symbol {
 public:
  TabulatedSymbol(int d, Index extent, std::vector<Complex> values);
  Complex eval(LatticePointRef chi) const override;
  double sup_bound() const override;
  int dimension() const override { return d_; }
  std::string kind() const override { return "tabulated"; }
  Index extent() const { return extent_; }
  const std::vector<Complex>& values() const { return values_; }

 private:
  int d_;
  Index extent_;
  std::vector<Complex> values_;
};

class SumSymbol final : public Symbol {
 public:
  SumSymbol(std::vector<SymbolPtr> terms, std::vector<Complex> weights);
  Complex eval(LatticePointRef chi) const override;
  double sup_bound() const override;
  int dimension() const override { return terms_.front()->dimension(); }
  std::string kind() const override { return "sum"; }
  const std::vector<SymbolPtr>& terms() const { return terms_; }
  const std::vector<Complex>& weights() const { return weights_; }

 private:
  std::vector<SymbolPtr> terms_;
  std::vector<Complex> weights_;
};

class ProductSymbol final : public Symbol {
 public:
  ProductSymbol(SymbolPtr lhs, SymbolPtr rhs);
  Complex eval(LatticePointRef chi) const override {
    return lhs_->eval(chi) * rhs_->eval(chi);
  }
  double sup_bound() const override { return lhs_->sup_bound() * rhs_->sup_bound(); }
  int dimension() const override { return lhs_->dimension(); }
  std::string kind() const override { return "product"; }
  const SymbolPtr& lhs() const { return lhs_; }
  const SymbolPtr& rhs() const { return rhs_; }

 private:
  SymbolPtr lhs_, rhs_;
};

class ConjugateSymbol final : public Symbol {
 public:
  explicit ConjugateSymbol(SymbolPtr inner) : inner_(std::move(inner)) {}
  Complex eval(LatticePointRef chi) const override { return std::conj(inner_->eval(chi)); }
  double sup_bound() const override { return inner_->sup_bound(); }
  int dimension() const override { return inner_->dimension(); }
  std::string kind() const override { return "conj"; }
  const SymbolPtr& inner() const { return inner_; }

 private:
  SymbolPtr inner_;
};

class SquaredModulusSymbol final : public Symbol {
 public:
  explicit SquaredModulusSymbol(SymbolPtr inner) : inner_(std::move(inner)) {}
  Complex eval(LatticePointRef chi) const override {
    return Complex(std::norm(inner_->eval(chi)), 0.0);
  }
  double sup_bound() const override {
    const double b = inner_->sup_bound();
    return b * b;
  }
  int dimension() const override { return inner_->dimension(); }
  std::string kind() const override { return "sqmod"; }
  const SymbolPtr& inner() const { return inner_; }

 private:
  SymbolPtr inner_;
};

// Factories.
SymbolPtr atomic_transform(AtomicMeasure mu);
SymbolPtr orthant_indicator(int d);
SymbolPtr orthant_indicator(std::vector<int> signs);
SymbolPtr shell_oscillator(std::vector<double> amplitudes, std::vector<double> radii,
                           Eigen::VectorXd axis, double width = 0.1);
SymbolPtr homogeneous_scalar(std::function<Complex(const Eigen::VectorXd&)> profile,
                             int d, double bound, std::string name = "custom");
SymbolPtr tabulated(int d, Index extent, std::vector<Complex> values);
SymbolPtr sum(std::vector<SymbolPtr> terms, std::vector<Complex> weights = {});
SymbolPtr product(SymbolPtr lhs, SymbolPtr rhs);
SymbolPtr conjugate(SymbolPtr inner);
SymbolPtr squared_modulus(SymbolPtr inner);

// The constant symbol c, realized exactly as the transform of c * delta_0.
SymbolPtr constant(int d, Complex c);

// 2 * 1_{[0,inf)^d} - 1. Takes values in {-1, +1}, so its squared modulus
// is identically one while the orthant part alone is direction sensitive.
SymbolPtr counterexample_kernel(int d);

// sigma(chi) * exp(+i <chi, tau>): shifts a candidate atom at tau to the
// origin so a plain ball average reads off its mass.
SymbolPtr modulate(SymbolPtr s, const Eigen::VectorXd& tau);

Complex symbol_eval(const Symbol& s, LatticePointRef chi);
double symbol_sup_bound(const Symbol& s);

}  // namespace specav
