#include "specav/json_io.hpp"

#include <stdexcept>

namespace specav {
namespace {

Json vector_to_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = j.at(i).get<double>();
  return v;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json re_row = Json::array(), im_row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

}  // namespace

Json complex_to_json(const Complex& z) {
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from_json(const Json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

Json measure_to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& atom : mu.atoms()) {
    Json entry;
    entry["tau"] = vector_to_json(atom.tau);
    entry["re"] = atom.mass.real();
    entry["im"] = atom.mass.imag();
    atoms.push_back(std::move(entry));
  }
  return Json{{"d", mu.dimension()}, {"atoms", std::move(atoms)}};
}

AtomicMeasure measure_from_json(const Json& j) {
  const int d = j.at("d").get<int>();
  std::vector<Atom> atoms;
  for (const auto& entry : j.at("atoms")) {
    Atom atom;
    atom.tau = vector_from_json(entry.at("tau"));
    atom.mass = Complex(entry.at("re").get<double>(),
                        entry.value("im", 0.0));
    atoms.push_back(std::move(atom));
  }
  return AtomicMeasure(d, std::move(atoms));
}

Json symbol_to_json(const Symbol& s) {
  Json j;
  j["kind"] = s.kind();
  if (const auto* atomic = dynamic_cast<const AtomicTransformSymbol*>(&s)) {
    j["measure"] = measure_to_json(atomic->measure());
  } else if (const auto* orthant = dynamic_cast<const OrthantIndicatorSymbol*>(&s)) {
    j["signs"] = orthant->signs();
  } else if (const auto* shell = dynamic_cast<const ShellOscillatorSymbol*>(&s)) {
    j["amplitudes"] = shell->amplitudes();
    j["radii"] = shell->radii();
    j["axis"] = vector_to_json(shell->axis());
    j["width"] = shell->width();
  } else if (const auto* hom = dynamic_cast<const HomogeneousScalarSymbol*>(&s)) {
    j["name"] = hom->name();
    j["d"] = hom->dimension();
    if (hom->name() == "custom")
      throw std::invalid_argument(
          "symbol_to_json: custom homogeneous profiles do not serialize; use a "
          "registry name");
  } else if (const auto* tab = dynamic_cast<const TabulatedSymbol*>(&s)) {
    j["d"] = tab->dimension();
    j["extent"] = tab->extent();
    Json values = Json::array();
    for (const auto& v : tab->values()) values.push_back(complex_to_json(v));
    j["values"] = std::move(values);
  } else if (const auto* sum_node = dynamic_cast<const SumSymbol*>(&s)) {
    Json terms = Json::array(), weights = Json::array();
    for (const auto& t : sum_node->terms()) terms.push_back(symbol_to_json(*t));
    for (const auto& w : sum_node->weights()) weights.push_back(complex_to_json(w));
    j["terms"] = std::move(terms);
    j["weights"] = std::move(weights);
  } else if (const auto* prod = dynamic_cast<const ProductSymbol*>(&s)) {
    j["lhs"] = symbol_to_json(*prod->lhs());
    j["rhs"] = symbol_to_json(*prod->rhs());
  } else if (const auto* cj = dynamic_cast<const ConjugateSymbol*>(&s)) {
    j["inner"] = symbol_to_json(*cj->inner());
  } else if (const auto* sq = dynamic_cast<const SquaredModulusSymbol*>(&s)) {
    j["inner"] = symbol_to_json(*sq->inner());
  } else {
    throw std::invalid_argument("symbol_to_json: unknown symbol kind " + s.kind());
  }
  return j;
}

SymbolPtr symbol_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "atomic") return atomic_transform(measure_from_json(j.at("measure")));
  if (kind == "orthant") return orthant_indicator(j.at("signs").get<std::vector<int>>());
  if (kind == "shell")
    return shell_oscillator(j.at("amplitudes").get<std::vector<double>>(),
                            j.at("radii").get<std::vector<double>>(),
                            vector_from_json(j.at("axis")), j.value("width", 0.1));
  if (kind == "homogeneous")
    return homogeneous_from_name(j.at("name").get<std::string>(), j.at("d").get<int>());
  if (kind == "tabulated") {
    std::vector<Complex> values;
    for (const auto& v : j.at("values")) values.push_back(complex_from_json(v));
    return tabulated(j.at("d").get<int>(), j.at("extent").get<Index>(),
                     std::move(values));
  }
  if (kind == "sum") {
    std::vector<SymbolPtr> terms;
    for (const auto& t : j.at("terms")) terms.push_back(symbol_from_json(t));
    std::vector<Complex> weights;
    if (j.contains("weights"))
      for (const auto& w : j.at("weights")) weights.push_back(complex_from_json(w));
    return sum(std::move(terms), std::move(weights));
  }
  if (kind == "product")
    return product(symbol_from_json(j.at("lhs")), symbol_from_json(j.at("rhs")));
  if (kind == "conj") return conjugate(symbol_from_json(j.at("inner")));
  if (kind == "sqmod") return squared_modulus(symbol_from_json(j.at("inner")));
  throw std::invalid_argument("symbol_from_json: unknown kind " + kind);
}

SymbolPtr builtin_symbol(const std::string& name, int d) {
  if (name == "orthant") return orthant_indicator(d);
  if (name == "counterexample") return counterexample_kernel(d);
  if (name == "counterexample-sqmod") return squared_modulus(counterexample_kernel(d));
  if (name == "one") return constant(d, {1.0, 0.0});
  throw std::invalid_argument("unknown symbol name: " + name);
}

std::vector<std::string> builtin_symbol_names() {
  return {"orthant", "counterexample", "counterexample-sqmod", "one"};
}

SymbolPtr homogeneous_from_name(const std::string& name, int d) {
  if (name == "one")
    return homogeneous_scalar([](const Eigen::VectorXd&) { return Complex(1.0, 0.0); },
                              d, 1.0, "one");
  if (name == "x1")
    return homogeneous_scalar(
        [](const Eigen::VectorXd& w) { return Complex(w[0], 0.0); }, d, 1.0, "x1");
  if (name == "x1_squared")
    return homogeneous_scalar(
        [](const Eigen::VectorXd& w) { return Complex(w[0] * w[0], 0.0); }, d, 1.0,
        "x1_squared");
  throw std::invalid_argument("unknown homogeneous profile: " + name);
}

MatrixSymbol matrix_symbol_from_json(const Json& j, int d) {
  if (j.contains("builtin"))
    return builtin_matrix_symbol(j.at("builtin").get<std::string>(),
                                 j.value("d", d));
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "sphere_table")
    throw std::invalid_argument("matrix_symbol_from_json: unknown kind " + kind);
  const int size = j.at("size").get<int>();
  const int dim = j.at("d").get<int>();
  struct Sample {
    Eigen::VectorXd omega;
    Eigen::MatrixXcd value;
  };
  auto samples = std::make_shared<std::vector<Sample>>();
  for (const auto& entry : j.at("samples")) {
    Sample s;
    s.omega = vector_from_json(entry.at("omega"));
    const double norm = s.omega.norm();
    if (!(norm > 0.0))
      throw std::invalid_argument("sphere_table: zero direction sample");
    s.omega /= norm;
    s.value = Eigen::MatrixXcd(size, size);
    const auto& re = entry.at("re");
    const auto& im = entry.at("im");
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c)
        s.value(r, c) =
            Complex(re.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>(),
                    im.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>());
    samples->push_back(std::move(s));
  }
  if (samples->empty())
    throw std::invalid_argument("sphere_table: needs at least one sample");
  return MatrixSymbol(
      size, dim,
      [samples](const Eigen::VectorXd& w) {
        std::size_t best = 0;
        double best_dist = ((*samples)[0].omega - w).norm();
        for (std::size_t i = 1; i < samples->size(); ++i) {
          const double dist = ((*samples)[i].omega - w).norm();
          if (dist < best_dist) {
            best_dist = dist;
            best = i;
          }
        }
        return (*samples)[best].value;
      },
      "sphere_table");
}

std::string spectrum_to_csv(const SpectrumPolynomial& poly) {
  std::string csv;
  for (int i = 0; i < poly.d; ++i) csv += "lambda" + std::to_string(i + 1) + ",";
  csv += "re,im,pattern\n";
  char num[64];
  for (const auto& [lambda, coeff] : poly.coefficients) {
    for (const Index v : lambda) csv += std::to_string(v) + ",";
    std::snprintf(num, sizeof num, "%.17g,%.17g,", coeff.value.real(),
                  coeff.value.imag());
    csv += num;
    for (const auto e : coeff.pattern)
      csv += e == 0 ? '0' : (e > 0 ? '+' : '-');
    csv += '\n';
  }
  return csv;
}

Json estimate_to_json(const WienerEstimate& est) {
  Json samples = Json::array();
  for (const auto& s : est.samples) {
    samples.push_back(Json{{"t", s.t},
                           {"r", s.r},
                           {"count", s.count},
                           {"avg", complex_to_json(s.average)}});
  }
  return Json{{"direction", vector_to_json(est.direction)},
              {"samples", std::move(samples)},
              {"limit", complex_to_json(est.extrapolated_limit)},
              {"fit_slope", complex_to_json(est.fit_slope)},
              {"fit_residual", est.fit_residual},
              {"degenerate_fit", est.degenerate_fit}};
}

Json verdict_to_json(const DirectionVerdict& v) {
  Json estimates = Json::array();
  for (const auto& e : v.estimates) estimates.push_back(estimate_to_json(e));
  return Json{{"estimates", std::move(estimates)},
              {"max_pairwise_deviation", v.max_pairwise_deviation},
              {"tolerance", v.tolerance},
              {"verdict", v.verdict == Verdict::consistent ? "consistent"
                                                           : "direction_dependent"}};
}

Json theorem_report_to_json(const WienerTheoremReport& r) {
  return Json{{"estimate", estimate_to_json(r.estimate)},
              {"expected_mass", r.expected_mass},
              {"abs_error", r.abs_error},
              {"rel_error", r.rel_error}};
}

Json scan_to_json(const DiscretePartScan& s) {
  Json masses = Json::array();
  for (const auto& [tau, mass] : s.candidate_masses)
    masses.push_back(Json{{"tau", vector_to_json(tau)}, {"mass", complex_to_json(mass)}});
  Json j{{"candidates", std::move(masses)},
         {"recovered", measure_to_json(s.recovered)},
         {"residual", estimate_to_json(s.residual)},
         {"direction_dependent", s.direction_dependent}};
  if (s.direction_check) j["direction_check"] = verdict_to_json(*s.direction_check);
  return j;
}

Json lipschitz_to_json(const LipschitzReport& r) {
  return Json{{"eps", r.eps},
              {"empirical_constant", r.empirical_constant},
              {"reference_bound", r.reference_bound},
              {"pairs", r.pairs_evaluated},
              {"worst_xi1", vector_to_json(r.worst_xi1)},
              {"worst_xi2", vector_to_json(r.worst_xi2)},
              {"within_reference", r.within_reference}};
}

Json greedy_to_json(const GreedySigma& g) {
  return Json{{"N", g.N},
              {"sigma", g.sigma},
              {"final_sum", complex_to_json(g.final_sum)},
              {"final_modulus", std::abs(g.final_sum)},
              {"floor", g.floor_value},
              {"floor_satisfied", std::abs(g.final_sum) >= g.floor_value}};
}

Json p1_report_to_json(const P1Report& r) {
  return Json{{"primed", r.primed},
              {"passed", r.passed},
              {"tolerance", r.tolerance},
              {"worst_deviation", r.worst_deviation},
              {"witness", r.witness}};
}

Json certificate_to_json(const BlowupCertificate& c) {
  return Json{{"N", c.N},
              {"coeff_l1_deviation", c.coeff_l1_deviation},
              {"bound_a", c.bound_a},
              {"z0_abs", c.z0_abs},
              {"bound_b", c.bound_b},
              {"grid_sup", c.grid_sup},
              {"sup_floor", c.sup_floor},
              {"p1_passed", c.p1_passed},
              {"pass_a", c.pass_a},
              {"pass_b", c.pass_b},
              {"pass_c", c.pass_c},
              {"pass", c.pass}};
}

Json conditions_to_json(const ConditionsReport& r) {
  Json j{{"samples", r.samples},
         {"sv_tolerance", r.sv_tolerance},
         {"continuity_modulus", r.continuity_modulus},
         {"stacked_rank", r.stacked_rank},
         {"a2_trivial_joint_kernel", r.a2_trivial_joint_kernel},
         {"degenerate_sample_count", r.degenerate_samples.size()},
         {"a3_cap_found", r.a3_cap_found}};
  if (r.cap_center.size() > 0) j["cap_center"] = vector_to_json(r.cap_center);
  return j;
}

Json matrix_estimate_to_json(const MatrixWienerEstimate& est) {
  Json samples = Json::array();
  for (const auto& s : est.samples)
    samples.push_back(Json{{"t", s.t},
                           {"r", s.r},
                           {"count", s.count},
                           {"avg", matrix_to_json(s.average)}});
  return Json{{"direction", vector_to_json(est.direction)},
              {"eps", est.eps},
              {"samples", std::move(samples)},
              {"limit", matrix_to_json(est.limit)},
              {"fit_residual", est.fit_residual},
              {"degenerate_fit", est.degenerate_fit}};
}

Json obstruction_to_json(const ObstructionReport& r) {
  Json gammas = Json::array();
  for (const auto& row : r.gamma) {
    Json per_eps = Json::array();
    for (const auto& est : row) per_eps.push_back(matrix_estimate_to_json(est));
    gammas.push_back(std::move(per_eps));
  }
  const char* verdict = r.verdict == ObstructionVerdict::obstructed
                            ? "obstructed"
                            : (r.verdict == ObstructionVerdict::not_obstructed
                                   ? "not_obstructed"
                                   : "cannot_conclude");
  return Json{{"conditions", conditions_to_json(r.conditions)},
              {"eps_values", r.eps_values},
              {"gamma", std::move(gammas)},
              {"gamma_direction_spread", r.gamma_direction_spread},
              {"gamma_eps_spread", r.gamma_eps_spread},
              {"gamma_direction_dependent", r.gamma_direction_dependent},
              {"kernel_intersection_rank", r.kernel_intersection_rank},
              {"feasibility_residual", r.feasibility_residual},
              {"tolerance", r.tolerance},
              {"verdict", verdict},
              {"violated_constraint", r.violated_constraint},
              {"note", r.note}};
}

Json transference_to_json(const TransferenceReport& r) {
  return Json{{"c1", r.c1},
              {"c", r.c},
              {"lattice_avg", complex_to_json(r.lattice_avg)},
              {"continuous_avg", complex_to_json(r.continuous_avg)},
              {"residual", r.residual},
              {"t", r.t},
              {"r", r.r},
              {"lattice_count", r.lattice_count},
              {"quadrature_cells", r.quadrature_cells}};
}

}  // namespace specav
