#include "specav/symbol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace specav {

double AtomicTransformSymbol::sup_bound() const {
  double total = 0.0;
  for (const auto& atom : mu_.atoms()) total += std::abs(atom.mass);
  return total;
}

OrthantIndicatorSymbol::OrthantIndicatorSymbol(std::vector<int> signs)
    : signs_(std::move(signs)) {
  if (signs_.empty())
    throw std::invalid_argument("OrthantIndicator: dimension must be >= 1");
  for (int s : signs_)
    if (s != 1 && s != -1)
      throw std::invalid_argument("OrthantIndicator: signs must be +1 or -1");
}

Complex OrthantIndicatorSymbol::eval(LatticePointRef chi) const {
  for (std::size_t i = 0; i < signs_.size(); ++i)
    if (signs_[i] * chi[static_cast<Eigen::Index>(i)] < 0) return {0.0, 0.0};
  return {1.0, 0.0};
}

ShellOscillatorSymbol::ShellOscillatorSymbol(std::vector<double> amplitudes,
                                             std::vector<double> radii,
                                             Eigen::VectorXd axis, double width)
    : amplitudes_(std::move(amplitudes)),
      radii_(std::move(radii)),
      axis_(std::move(axis)),
      width_(width) {
  if (amplitudes_.size() != radii_.size())
    throw std::invalid_argument("ShellOscillator: amplitudes/radii size mismatch");
  if (!(width_ >= 0.0 && width_ < 1.0))
    throw std::invalid_argument("ShellOscillator: width must be in [0, 1)");
  const double norm = axis_.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("ShellOscillator: zero axis");
  axis_ /= norm;
  for (std::size_t n = 0; n < radii_.size(); ++n) {
    if (!(radii_[n] > 0.0))
      throw std::invalid_argument("ShellOscillator: radii must be positive");
    if (n > 0 && !(radii_[n - 1] * (1.0 + width_) < radii_[n] * (1.0 - width_)))
      throw std::invalid_argument("ShellOscillator: bands overlap at index " +
                                  std::to_string(n));
  }
}

Complex ShellOscillatorSymbol::eval(LatticePointRef chi) const {
  double proj = 0.0;
  for (int i = 0; i < axis_.size(); ++i)
    proj += static_cast<double>(chi[i]) * axis_[i];
  proj = std::abs(proj);
  for (std::size_t n = 0; n < radii_.size(); ++n)
    if (proj >= radii_[n] * (1.0 - width_) && proj <= radii_[n] * (1.0 + width_))
      return {amplitudes_[n], 0.0};
  return {0.0, 0.0};
}

double ShellOscillatorSymbol::sup_bound() const {
  double b = 0.0;
  for (double a : amplitudes_) b = std::max(b, std::abs(a));
  return b;
}

HomogeneousScalarSymbol::HomogeneousScalarSymbol(
    std::function<Complex(const Eigen::VectorXd&)> profile, int d, double bound,
    std::string name)
    : profile_(std::move(profile)), d_(d), bound_(bound), name_(std::move(name)) {
  if (d_ <= 0) throw std::invalid_argument("HomogeneousScalar: dimension must be >= 1");
  if (!(bound_ >= 0.0)) throw std::invalid_argument("HomogeneousScalar: bad bound");
}

Complex HomogeneousScalarSymbol::eval(LatticePointRef chi) const {
  Eigen::VectorXd x(d_);
  for (int i = 0; i < d_; ++i) x[i] = static_cast<double>(chi[i]);
  const double norm = x.norm();
  if (norm == 0.0) return {0.0, 0.0};
  return profile_(x / norm);
}

TabulatedSymbol::TabulatedSymbol(int d, Index extent, std::vector<Complex> values)
    : d_(d), extent_(extent), values_(std::move(values)) {
  if (d_ <= 0) throw std::invalid_argument("Tabulated: dimension must be >= 1");
  if (extent_ < 0) throw std::invalid_argument("Tabulated: extent must be >= 0");
  std::size_t expect = 1;
  for (int i = 0; i < d_; ++i) expect *= static_cast<std::size_t>(2 * extent_ + 1);
  if (values_.size() != expect)
    throw std::invalid_argument("Tabulated: expected " + std::to_string(expect) +
                                " values, got " + std::to_string(values_.size()));
}

Complex TabulatedSymbol::eval(LatticePointRef chi) const {
  std::size_t idx = 0;
  const std::size_t side = static_cast<std::size_t>(2 * extent_ + 1);
  for (int i = 0; i < d_; ++i) {
    const Index c = chi[i];
    if (c < -extent_ || c > extent_)
      throw std::domain_error("Tabulated symbol evaluated outside extent " +
                              std::to_string(extent_));
    idx = idx * side + static_cast<std::size_t>(c + extent_);
  }
  return values_[idx];
}

double TabulatedSymbol::sup_bound() const {
  double b = 0.0;
  for (const Complex& v : values_) b = std::max(b, std::abs(v));
  return b;
}

SumSymbol::SumSymbol(std::vector<SymbolPtr> terms, std::vector<Complex> weights)
    : terms_(std::move(terms)), weights_(std::move(weights)) {
  if (terms_.empty()) throw std::invalid_argument("sum: needs at least one term");
  if (weights_.empty()) weights_.assign(terms_.size(), Complex(1.0, 0.0));
  if (weights_.size() != terms_.size())
    throw std::invalid_argument("sum: weights/terms size mismatch");
  for (const auto& t : terms_)
    if (t->dimension() != terms_.front()->dimension())
      throw std::invalid_argument("sum: dimension mismatch between terms");
}

Complex SumSymbol::eval(LatticePointRef chi) const {
  Complex v(0.0, 0.0);
  for (std::size_t i = 0; i < terms_.size(); ++i)
    v += weights_[i] * terms_[i]->eval(chi);
  return v;
}

double SumSymbol::sup_bound() const {
  double b = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    b += std::abs(weights_[i]) * terms_[i]->sup_bound();
  return b;
}

ProductSymbol::ProductSymbol(SymbolPtr lhs, SymbolPtr rhs)
    : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
  if (lhs_->dimension() != rhs_->dimension())
    throw std::invalid_argument("product: dimension mismatch");
}

SymbolPtr atomic_transform(AtomicMeasure mu) {
  return std::make_shared<AtomicTransformSymbol>(std::move(mu));
}

SymbolPtr orthant_indicator(int d) {
  if (d <= 0) throw std::invalid_argument("orthant_indicator: d must be >= 1");
  return std::make_shared<OrthantIndicatorSymbol>(std::vector<int>(d, 1));
}

SymbolPtr orthant_indicator(std::vector<int> signs) {
  return std::make_shared<OrthantIndicatorSymbol>(std::move(signs));
}

SymbolPtr shell_oscillator(std::vector<double> amplitudes, std::vector<double> radii,
                           Eigen::VectorXd axis, double width) {
  return std::make_shared<ShellOscillatorSymbol>(std::move(amplitudes),
                                                 std::move(radii), std::move(axis),
                                                 width);
}

SymbolPtr homogeneous_scalar(std::function<Complex(const Eigen::VectorXd&)> profile,
                             int d, double bound, std::string name) {
  return std::make_shared<HomogeneousScalarSymbol>(std::move(profile), d, bound,
                                                   std::move(name));
}

SymbolPtr tabulated(int d, Index extent, std::vector<Complex> values) {
  return std::make_shared<TabulatedSymbol>(d, extent, std::move(values));
}

SymbolPtr sum(std::vector<SymbolPtr> terms, std::vector<Complex> weights) {
  return std::make_shared<SumSymbol>(std::move(terms), std::move(weights));
}

SymbolPtr product(SymbolPtr lhs, SymbolPtr rhs) {
  return std::make_shared<ProductSymbol>(std::move(lhs), std::move(rhs));
}

SymbolPtr conjugate(SymbolPtr inner) {
  return std::make_shared<ConjugateSymbol>(std::move(inner));
}

SymbolPtr squared_modulus(SymbolPtr inner) {
  return std::make_shared<SquaredModulusSymbol>(std::move(inner));
}

SymbolPtr constant(int d, Complex c) {
  return atomic_transform(AtomicMeasure::dirac(Eigen::VectorXd::Zero(d), c));
}

SymbolPtr counterexample_kernel(int d) {
  return sum({orthant_indicator(d), constant(d, {1.0, 0.0})},
             {Complex(2.0, 0.0), Complex(-1.0, 0.0)});
}

SymbolPtr modulate(SymbolPtr s, const Eigen::VectorXd& tau) {
  const int d = s->dimension();
  if (tau.size() != d) throw std::invalid_argument("modulate: dimension mismatch");
  return product(std::move(s), conjugate(atomic_transform(AtomicMeasure::dirac(tau))));
}

Complex symbol_eval(const Symbol& s, LatticePointRef chi) { return s.eval(chi); }
double symbol_sup_bound(const Symbol& s) { return s.sup_bound(); }

}  // namespace specav
