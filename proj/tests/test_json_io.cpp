#include <doctest.h>

#include <random>

#include "specav/json_io.hpp"

using namespace specav;

namespace {

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

void check_same_eval(const SymbolPtr& a, const SymbolPtr& b) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Index> coord(-3, 3);  // within tabulated extents
  for (int i = 0; i < 25; ++i) {
    LatticePoint chi(2);
    chi << coord(rng), coord(rng);
    const LatticePointRef ref(chi.data(), 2);
    CHECK(std::abs(a->eval(ref) - b->eval(ref)) < 1e-14);
  }
}

}  // namespace

TEST_CASE("measure serialization follows the documented schema") {
  const AtomicMeasure mu(2, {Atom{vec2(1.0, 2.0), Complex(1.0, 0.0)}});
  const Json j = measure_to_json(mu);
  CHECK(j.at("d") == 2);
  CHECK(j.at("atoms").size() == 1);
  CHECK(j.at("atoms").at(0).at("tau").at(0) == 1.0);
  CHECK(j.at("atoms").at(0).at("re") == 1.0);
  CHECK(j.at("atoms").at(0).at("im") == 0.0);

  const AtomicMeasure back = measure_from_json(j);
  CHECK(back.dimension() == 2);
  REQUIRE(back.atoms().size() == 1);
  CHECK(back.atoms()[0].mass == Complex(1.0, 0.0));
  CHECK(torus_distance(back.atoms()[0].tau, mu.atoms()[0].tau) < 1e-15);
}

TEST_CASE("measure parsing accepts a literal schema document") {
  const Json j = Json::parse(
      R"({"d":2,"atoms":[{"tau":[1.0,2.0],"re":1.0,"im":0.0},{"tau":[3.0,1.0],"re":0.0,"im":0.5}]})");
  const AtomicMeasure mu = measure_from_json(j);
  CHECK(mu.atoms().size() == 2);
  CHECK(mu.atoms()[1].mass == Complex(0.0, 0.5));
}

TEST_CASE("symbol round trip across every serializable kind") {
  const AtomicMeasure mu(2, {Atom{vec2(1.0, 2.0), Complex(1.0, 0.0)},
                             Atom{vec2(3.0, 1.0), Complex(0.0, 0.5)}});
  std::vector<SymbolPtr> cases = {
      atomic_transform(mu),
      orthant_indicator(std::vector<int>{1, -1}),
      shell_oscillator({1.0, 0.0, 1.0}, {100.0, 500.0, 2500.0}, vec2(1.0, 0.0), 0.2),
      homogeneous_from_name("x1_squared", 2),
      tabulated(2, 3, std::vector<Complex>(49, Complex(0.25, -0.5))),
      sum({orthant_indicator(2), atomic_transform(mu)},
          {Complex(2.0, 0.0), Complex(0.0, 1.0)}),
      product(orthant_indicator(2), atomic_transform(mu)),
      conjugate(atomic_transform(mu)),
      squared_modulus(counterexample_kernel(2)),
  };
  for (const auto& s : cases) {
    const Json j = symbol_to_json(*s);
    const SymbolPtr back = symbol_from_json(j);
    CHECK(back->kind() == s->kind());
    CHECK(back->dimension() == s->dimension());
    check_same_eval(s, back);
  }
}

TEST_CASE("tabulated symbols survive a round trip but reject bad extents") {
  const auto s = tabulated(2, 1, std::vector<Complex>(9, Complex(1.0, 0.0)));
  const auto back = symbol_from_json(symbol_to_json(*s));
  LatticePoint chi(2);
  chi << 2, 0;
  CHECK_THROWS_AS(back->eval(LatticePointRef(chi.data(), 2)), std::domain_error);
}

TEST_CASE("custom homogeneous profiles refuse to serialize") {
  const auto custom = homogeneous_scalar(
      [](const Eigen::VectorXd& w) { return Complex(w[0], 0.0); }, 2, 1.0);
  CHECK_THROWS_AS(symbol_to_json(*custom), std::invalid_argument);
}

TEST_CASE("builtin symbol names") {
  CHECK(builtin_symbol("one", 2)->eval(LatticePointRef(
            LatticePoint::Zero(2).eval().data(), 2)) == Complex(1.0, 0.0));
  const auto sq = builtin_symbol("counterexample-sqmod", 2);
  LatticePoint chi(2);
  chi << -4, 7;
  CHECK(sq->eval(LatticePointRef(chi.data(), 2)) == Complex(1.0, 0.0));
  CHECK_THROWS_AS(builtin_symbol("bogus", 2), std::invalid_argument);
  CHECK(builtin_symbol_names().size() == 4);
}

TEST_CASE("matrix symbols load from builtin references and sphere tables") {
  const Json builtin = Json{{"builtin", "curl2"}};
  const MatrixSymbol curl = matrix_symbol_from_json(builtin, 2);
  CHECK(curl.size() == 2);

  Json table;
  table["kind"] = "sphere_table";
  table["size"] = 2;
  table["d"] = 2;
  Json samples = Json::array();
  for (int k = 0; k < 4; ++k) {
    const double theta = 2.0 * M_PI * k / 4.0;
    Json s;
    s["omega"] = Json::array({std::cos(theta), std::sin(theta)});
    s["re"] = Json::array({Json::array({std::cos(theta), 0.0}),
                           Json::array({0.0, std::cos(theta)})});
    s["im"] = Json::array({Json::array({0.0, 0.0}), Json::array({0.0, 0.0})});
    samples.push_back(std::move(s));
  }
  table["samples"] = samples;
  const MatrixSymbol tab = matrix_symbol_from_json(table, 2);
  // nearest-sample semantics: close to e1 we read the e1 table entry
  Eigen::VectorXd w(2);
  w << 0.99, 0.01;
  CHECK(std::abs(tab(w)(0, 0).real() - 1.0) < 1e-12);
}

TEST_CASE("complex values round trip") {
  const Complex z(1.25, -0.75);
  CHECK(complex_from_json(complex_to_json(z)) == z);
}

TEST_CASE("report serializers emit the documented keys") {
  TransferenceReport tr;
  tr.t = 100.0;
  tr.c1 = 0.01;
  tr.c = 0.04;
  tr.residual = 0.001;
  const Json j = transference_to_json(tr);
  for (const char* key : {"c1", "c", "lattice_avg", "continuous_avg", "residual", "t"})
    CHECK(j.contains(key));

  BlowupCertificate cert;
  const Json cj = certificate_to_json(cert);
  for (const char* key : {"bound_a", "bound_b", "grid_sup", "pass"})
    CHECK(cj.contains(key));
}
