#include <doctest.h>

#include <random>

#include "specav/symbol.hpp"
#include "support/oracles.hpp"

using namespace specav;

namespace {

LatticePoint point2(Index x, Index y) {
  LatticePoint p(2);
  p << x, y;
  return p;
}

LatticePointRef ref(const LatticePoint& p) {
  return LatticePointRef(p.data(), p.size());
}

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

}  // namespace

TEST_CASE("orthant indicator") {
  const auto s = orthant_indicator(2);
  CHECK(s->eval(ref(point2(3, 0))) == Complex(1.0, 0.0));
  CHECK(s->eval(ref(point2(0, 0))) == Complex(1.0, 0.0));
  CHECK(s->eval(ref(point2(-1, 5))) == Complex(0.0, 0.0));
  CHECK(s->sup_bound() == 1.0);
  const auto flipped = orthant_indicator(std::vector<int>{-1, 1});
  CHECK(flipped->eval(ref(point2(-1, 5))) == Complex(1.0, 0.0));
}

TEST_CASE("counterexample kernel has unit modulus everywhere") {
  const auto k = counterexample_kernel(2);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Index> coord(-50, 50);
  for (int i = 0; i < 100; ++i) {
    const auto chi = point2(coord(rng), coord(rng));
    CHECK(std::abs(std::abs(k->eval(ref(chi))) - 1.0) < 1e-15);
  }
  const auto sq = squared_modulus(k);
  CHECK(sq->eval(ref(point2(7, -3))) == Complex(1.0, 0.0));
  CHECK(sq->eval(ref(point2(4, 9))) == Complex(1.0, 0.0));
}

TEST_CASE("sum of two orthants doubles inside the orthant") {
  const auto s = sum({orthant_indicator(2), orthant_indicator(2)});
  CHECK(s->eval(ref(point2(2, 3))) == Complex(2.0, 0.0));
  CHECK(s->eval(ref(point2(-2, 3))) == Complex(0.0, 0.0));
  CHECK(s->sup_bound() == 2.0);
}

TEST_CASE("conjugate of a dirac transform flips the phase sign") {
  const Eigen::VectorXd tau = vec2(0.4, 1.1);
  const auto s = conjugate(atomic_transform(AtomicMeasure::dirac(tau)));
  const auto chi = point2(3, -2);
  const double phase = 3 * tau[0] - 2 * tau[1];
  const Complex expect = std::polar(1.0, +phase);
  CHECK(std::abs(s->eval(ref(chi)) - expect) < 1e-14);
}

TEST_CASE("squared modulus of an atomic transform matches the autocorrelation oracle") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> pos(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> mass(0.2, 1.0);
  std::uniform_int_distribution<Index> freq(-30, 30);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Atom> atoms;
    for (int j = 0; j < 4; ++j)
      atoms.push_back(Atom{vec2(pos(rng), pos(rng)), Complex(mass(rng), mass(rng))});
    AtomicMeasure mu(2, atoms);
    const auto sq = squared_modulus(atomic_transform(mu));
    const auto conv = oracle::autocorrelation_atoms(mu);
    for (int k = 0; k < 10; ++k) {
      const auto chi = point2(freq(rng), freq(rng));
      const Complex via_symbol = sq->eval(ref(chi));
      const Complex via_conv = oracle::autocorrelation_transform(conv, ref(chi));
      CHECK(std::abs(via_symbol - via_conv) < 1e-11);
    }
  }
}

TEST_CASE("shell oscillator bands") {
  const auto s = shell_oscillator({1.0, 0.5}, {100.0, 1000.0}, vec2(1.0, 0.0), 0.1);
  CHECK(s->eval(ref(point2(100, 7))) == Complex(1.0, 0.0));
  CHECK(s->eval(ref(point2(-105, 0))) == Complex(1.0, 0.0));   // |.| and band
  CHECK(s->eval(ref(point2(111, 0))) == Complex(0.0, 0.0));    // just outside
  CHECK(s->eval(ref(point2(950, 3))) == Complex(0.5, 0.0));
  CHECK(s->eval(ref(point2(500, 0))) == Complex(0.0, 0.0));    // between bands
  CHECK(s->sup_bound() == 1.0);
  CHECK_THROWS_AS(shell_oscillator({1.0, 1.0}, {100.0, 110.0}, vec2(1.0, 0.0), 0.1),
                  std::invalid_argument);  // overlapping bands
}

TEST_CASE("homogeneous scalar uses the direction and zeroes the origin") {
  const auto s = homogeneous_scalar(
      [](const Eigen::VectorXd& w) { return Complex(w[0] * w[0], 0.0); }, 2, 1.0,
      "x1_squared");
  CHECK(s->eval(ref(point2(5, 0))).real() == doctest::Approx(1.0));
  CHECK(s->eval(ref(point2(3, 3))).real() == doctest::Approx(0.5));
  CHECK(s->eval(ref(point2(0, 0))) == Complex(0.0, 0.0));
}

TEST_CASE("tabulated lookups and extent errors") {
  std::vector<Complex> values(25, Complex(0.0, 0.0));
  values[2 * 5 + 3] = Complex(4.0, 1.0);  // chi = (0, 1) with extent 2
  const auto s = tabulated(2, 2, values);
  CHECK(s->eval(ref(point2(0, 1))) == Complex(4.0, 1.0));
  CHECK_THROWS_AS(s->eval(ref(point2(3, 0))), std::domain_error);
  CHECK(s->sup_bound() == doctest::Approx(std::abs(Complex(4.0, 1.0))));
}

TEST_CASE("product bound multiplies, sum bound adds with weights") {
  const auto a = constant(2, Complex(3.0, 0.0));
  const auto b = orthant_indicator(2);
  CHECK(product(a, b)->sup_bound() == doctest::Approx(3.0));
  CHECK(sum({a, b}, {Complex(2.0, 0.0), Complex(0.0, 1.0)})->sup_bound() ==
        doctest::Approx(7.0));
}

TEST_CASE("modulation shifts an atom to the origin") {
  const Eigen::VectorXd tau = vec2(1.0, 2.0);
  const auto s = atomic_transform(AtomicMeasure::dirac(tau, Complex(0.0, 0.5)));
  const auto m = modulate(s, tau);
  for (Index x : {-7, 0, 12}) {
    const auto chi = point2(x, 3 * x);
    CHECK(std::abs(m->eval(ref(chi)) - Complex(0.0, 0.5)) < 1e-13);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(product(orthant_indicator(2), orthant_indicator(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sum({orthant_indicator(2), orthant_indicator(3)}),
                  std::invalid_argument);
}
