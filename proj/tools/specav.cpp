// Batch front-end: every pipeline is a subcommand that reads a config
// (flags or a replayed JSON echo), runs deterministically, and writes CSV
// and JSON artifacts next to a config echo that reproduces the run.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "specav/json_io.hpp"
#include "specav/transference.hpp"

using namespace specav;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCannotConclude = 2;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_json(const std::string& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

Eigen::VectorXd parse_direction(const std::string& token, int d) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  const auto axis = [&](const std::string& name, double sign) {
    const int k = std::stoi(name.substr(1));
    if (k < 1 || k > d)
      throw std::invalid_argument("direction axis out of range: " + token);
    v[k - 1] = sign;
    return v;
  };
  if (token == "diag") return Eigen::VectorXd::Constant(d, 1.0 / std::sqrt(double(d)));
  if (token == "antidiag")
    return Eigen::VectorXd::Constant(d, -1.0 / std::sqrt(double(d)));
  if (token.size() >= 2 && token[0] == 'e') return axis(token, 1.0);
  if (token.size() >= 3 && token[0] == '-' && token[1] == 'e')
    return axis(token.substr(1), -1.0);
  // numeric form: "x:y:z"
  std::vector<double> coords;
  std::size_t pos = 0;
  while (pos != std::string::npos && pos < token.size()) {
    const std::size_t next = token.find(':', pos);
    coords.push_back(std::stod(token.substr(pos, next - pos)));
    pos = next == std::string::npos ? next : next + 1;
  }
  if (static_cast<int>(coords.size()) != d)
    throw std::invalid_argument("direction '" + token + "' does not have " +
                                std::to_string(d) + " coordinates");
  for (int i = 0; i < d; ++i) v[i] = coords[static_cast<std::size_t>(i)];
  const double norm = v.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("zero direction: " + token);
  return Eigen::VectorXd(v / norm);
}

GrowthFunction growth_from_config(const Json& cfg) {
  const std::string kind = cfg.at("kind").get<std::string>();
  if (kind == "sqrt") return GrowthFunction::sqrt();
  if (kind == "linear") return GrowthFunction::linear(cfg.at("eps").get<double>());
  if (kind == "custom") {
    std::vector<std::pair<double, double>> knots;
    for (const auto& k : cfg.at("knots"))
      knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
    return GrowthFunction::custom(std::move(knots));
  }
  throw std::invalid_argument("unknown growth kind: " + kind);
}

SymbolPtr symbol_from_config(const Json& cfg, int d) {
  if (cfg.is_string()) {
    const std::string name = cfg.get<std::string>();
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json") {
      std::ifstream in(name);
      if (!in) throw std::runtime_error("cannot read symbol file: " + name);
      return symbol_from_json(Json::parse(in));
    }
    return builtin_symbol(name, d);
  }
  return symbol_from_json(cfg);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  return Json::parse(in);
}

std::string csv_direction(const Eigen::VectorXd& v) {
  std::string out;
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += fmt(v[i]);
  }
  return out;
}

void append_samples_csv(std::string& csv, const WienerEstimate& est) {
  for (const auto& s : est.samples)
    csv += csv_direction(est.direction) + "," + fmt(s.t) + "," + fmt(s.r) + "," +
           std::to_string(s.count) + "," + fmt(s.average.real()) + "," +
           fmt(s.average.imag()) + "\n";
}

std::string gnuplot_script(const std::string& prefix) {
  std::string g;
  g += "# plot the per-sample averages emitted alongside this script\n";
  g += "set datafile separator ','\n";
  g += "set logscale x\n";
  g += "set xlabel 't'\n";
  g += "set ylabel 're(average)'\n";
  g += "plot '" + prefix + ".csv' every ::1 using 2:5 with linespoints title 'averages'\n";
  return g;
}

// ---------------------------------------------------------------- average

int run_average(const Json& cfg) {
  const int d = cfg.at("d").get<int>();
  const GrowthFunction growth = growth_from_config(cfg.at("growth"));
  const Schedule sched = schedule(growth, cfg.at("t_min").get<double>(),
                                  cfg.at("t_max").get<double>(),
                                  cfg.at("steps").get<int>());
  AveragingOptions opts;
  opts.threads = cfg.at("threads").get<int>();
  if (cfg.at("normalization").get<std::string>() == "volume")
    opts.norm = Normalization::volume;

  std::vector<Eigen::VectorXd> directions;
  for (const auto& tok : cfg.at("directions"))
    directions.push_back(parse_direction(tok.get<std::string>(), d));
  const double tol = cfg.at("tolerance").get<double>();
  const std::string prefix = cfg.at("out_prefix").get<std::string>();

  Json summary;
  std::string csv = "direction,t,r,count,re_avg,im_avg\n";
  int exit_code = kExitOk;

  if (cfg.contains("measure")) {
    const AtomicMeasure mu = measure_from_json(
        cfg.at("measure").is_string()
            ? load_json_file(cfg.at("measure").get<std::string>())
            : cfg.at("measure"));
    summary["measure"] = measure_to_json(mu);
    if (cfg.value("theorem_check", false)) {
      Json reports = Json::array();
      double worst_rel = 0.0;
      for (const auto& omega : directions) {
        const auto report = wiener_theorem_check(mu, omega, sched, opts);
        append_samples_csv(csv, report.estimate);
        reports.push_back(theorem_report_to_json(report));
        worst_rel = std::max(worst_rel, report.rel_error);
      }
      summary["theorem_reports"] = std::move(reports);
      summary["worst_rel_error"] = worst_rel;
    }
    if (cfg.value("recover_atoms", false)) {
      const auto s = atomic_transform(mu);
      Json recovered = Json::array();
      for (const auto& atom : mu.atoms()) {
        const Complex mass = atom_mass_recovery(s, atom.tau, directions.front(),
                                                sched, opts);
        recovered.push_back(Json{{"tau", Json::array()},
                                 {"true_mass", complex_to_json(atom.mass)},
                                 {"recovered_mass", complex_to_json(mass)},
                                 {"abs_error", std::abs(mass - atom.mass)}});
        for (int i = 0; i < d; ++i)
          recovered.back()["tau"].push_back(atom.tau[i]);
      }
      summary["atom_recovery"] = std::move(recovered);
    }
    if (!cfg.value("theorem_check", false) && !cfg.value("recover_atoms", false)) {
      const auto verdictv = direction_dependence_test(atomic_transform(mu),
                                                      directions, sched, tol, opts);
      for (const auto& est : verdictv.estimates) append_samples_csv(csv, est);
      summary["direction_test"] = verdict_to_json(verdictv);
    }
  } else {
    const SymbolPtr s = symbol_from_config(cfg.at("symbol"), d);
    if (directions.size() >= 2) {
      const auto verdictv = direction_dependence_test(s, directions, sched, tol, opts);
      for (const auto& est : verdictv.estimates) append_samples_csv(csv, est);
      summary["direction_test"] = verdict_to_json(verdictv);
      const bool dependent = verdictv.verdict == Verdict::direction_dependent;
      if (cfg.value("expect_consistent", false) && dependent) {
        summary["expect_consistent_violated"] = true;
        exit_code = kExitError;
      }
    } else {
      const auto est = wiener_average_sequence(s, directions.front(), sched, opts);
      append_samples_csv(csv, est);
      summary["estimate"] = estimate_to_json(est);
    }
  }

  write_text(prefix + ".csv", csv);
  write_text(prefix + ".gp", gnuplot_script(prefix));
  write_json(prefix + ".json", summary);
  write_json(prefix + ".config.json", cfg);
  return exit_code;
}

// -------------------------------------------------------------- riesz-demo

int run_riesz(const Json& cfg) {
  const std::size_t grid = cfg.at("grid").get<std::size_t>();
  const bool asymmetric = cfg.value("asymmetric", false);
  const bool brute = cfg.value("brute_check", false);
  const std::string prefix = cfg.at("out_prefix").get<std::string>();

  Json runs = Json::array();
  Json table = Json::array();
  for (const auto& n_entry : cfg.at("n_list")) {
    const int N = n_entry.get<int>();
    if (N > 16)
      throw resource_limit_error(
          "riesz-demo: N = " + std::to_string(N) +
          " exceeds the 3^N enumeration guard (N <= 16); run greedy_sigma "
          "alone for large N");
    const GreedySigma greedy = greedy_sigma(N);
    const FrequencyLadder ladder =
        build_frequencies(N, cfg.at("l").get<int>(), cfg.at("base").get<Index>());
    const RieszProductSpec spec = make_riesz_spec(greedy, ladder, asymmetric);
    const SymbolPtr m = shell_symbol_for(spec);
    const P1Report p1 = asymmetric ? check_P1prime(m, spec) : check_P1(m, spec);
    const BlowupCertificate cert = blowup_certificate(m, spec, grid, p1);

    Json run;
    run["N"] = N;
    run["greedy"] = greedy_to_json(greedy);
    run["ladder_heights"] = ladder.heights;
    run["p1"] = p1_report_to_json(p1);
    run["certificate"] = certificate_to_json(cert);
    if (brute && N <= 8) {
      const SpectrumPolynomial fast = target_polynomial(m, spec);
      const SpectrumPolynomial slow = expansion_route_target(m, spec);
      double max_dev = 0.0;
      for (const auto& [lambda, coeff] : fast.coefficients) {
        const auto it = slow.coefficients.find(lambda);
        const Complex want =
            it == slow.coefficients.end() ? Complex(0.0, 0.0) : it->second.value;
        max_dev = std::max(max_dev, std::abs(coeff.value - want));
      }
      run["expansion_route_max_dev"] = max_dev;
      run["expansion_route_ok"] = max_dev <= 1e-12;
    }
    runs.push_back(std::move(run));
    table.push_back(Json{{"N", N},
                         {"z0_abs", cert.z0_abs},
                         {"floor", cert.bound_b},
                         {"above_floor", cert.z0_abs >= cert.bound_b}});
  }

  Json summary{{"runs", std::move(runs)}, {"floor_table", std::move(table)}};
  write_json(prefix + ".json", summary);
  write_json(prefix + ".config.json", cfg);
  return kExitOk;
}

// --------------------------------------------------------- projection-demo

int run_projection(const Json& cfg) {
  const int d = cfg.at("d").get<int>();
  const MatrixSymbol A =
      cfg.at("matrix").is_string()
          ? (cfg.at("matrix").get<std::string>().find(".json") != std::string::npos
                 ? matrix_symbol_from_json(
                       load_json_file(cfg.at("matrix").get<std::string>()), d)
                 : builtin_matrix_symbol(cfg.at("matrix").get<std::string>(), d))
          : matrix_symbol_from_json(cfg.at("matrix"), d);

  std::vector<Eigen::VectorXd> directions;
  for (const auto& tok : cfg.at("directions"))
    directions.push_back(parse_direction(tok.get<std::string>(), A.dimension()));

  ObstructionOptions opts;
  opts.sphere_samples = cfg.at("sphere_samples").get<int>();
  opts.sv_tolerance = cfg.at("sv_tolerance").get<double>();
  opts.t_values = cfg.at("t_list").get<std::vector<double>>();
  opts.threads = cfg.at("threads").get<int>();

  const ObstructionReport report = obstruction_check(
      A, directions, cfg.at("eps_list").get<std::vector<double>>(),
      cfg.at("tolerance").get<double>(), opts);

  const std::string prefix = cfg.at("out_prefix").get<std::string>();
  write_json(prefix + ".json", obstruction_to_json(report));
  write_json(prefix + ".config.json", cfg);
  return report.verdict == ObstructionVerdict::cannot_conclude ? kExitCannotConclude
                                                               : kExitOk;
}

// ----------------------------------------------------------- transfer-check

int run_transfer(const Json& cfg) {
  const int d = cfg.at("d").get<int>();
  const SymbolPtr s = symbol_from_config(cfg.at("symbol"), d);
  const Eigen::VectorXd omega =
      parse_direction(cfg.at("direction").get<std::string>(), d);
  const GrowthFunction growth = growth_from_config(cfg.at("growth"));
  const auto reports = transference_trend(s, omega, growth,
                                          cfg.at("t_list").get<std::vector<double>>(),
                                          cfg.at("quad_per_unit").get<int>());

  Json items = Json::array();
  bool decreasing = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    items.push_back(transference_to_json(reports[i]));
    if (i > 0 && reports[i].residual > reports[i - 1].residual * 1.2)
      decreasing = false;
  }
  Json summary{{"reports", std::move(items)},
               {"residual_trend_decreasing", decreasing}};
  const std::string prefix = cfg.at("out_prefix").get<std::string>();
  write_json(prefix + ".json", summary);
  write_json(prefix + ".config.json", cfg);
  return kExitOk;
}

int dispatch(const Json& cfg) {
  const std::string sub = cfg.at("subcommand").get<std::string>();
  if (sub == "average") return run_average(cfg);
  if (sub == "riesz-demo") return run_riesz(cfg);
  if (sub == "projection-demo") return run_projection(cfg);
  if (sub == "transfer-check") return run_transfer(cfg);
  throw std::invalid_argument("unknown subcommand in config: " + sub);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "specav: lattice-ball spectral averaging, Riesz-product blow-up "
      "certificates, pseudoinverse projection obstructions, and the "
      "torus-to-Euclidean transference check"};
  app.require_subcommand(1);

  // ---- average
  auto* avg = app.add_subcommand(
      "average",
      "Ball averages of a symbol along rays; direction-dependence verdicts, "
      "atomic-measure theorem checks, and mass recovery");
  std::string avg_symbol = "orthant", avg_measure, avg_growth = "sqrt";
  std::string avg_prefix = "average", avg_norm = "count";
  std::vector<std::string> avg_dirs = {"diag", "antidiag"};
  int avg_d = 2, avg_steps = 25, avg_threads = 1;
  double avg_tmin = 1e2, avg_tmax = 1e5, avg_eps = 0.1, avg_tol = 0.02;
  std::uint64_t avg_seed = 12345;
  bool avg_theorem = false, avg_recover = false, avg_expect_consistent = false;
  avg->add_option("--symbol", avg_symbol,
                  "builtin name (orthant, counterexample, counterexample-sqmod, "
                  "one) or a .json symbol file");
  avg->add_option("--measure", avg_measure,
                  "atomic measure .json file; replaces --symbol");
  avg->add_flag("--theorem-check", avg_theorem,
                "compare the averaged squared transform with sum |a_j|^2");
  avg->add_flag("--recover-atoms", avg_recover,
                "recover each atom mass by modulated averages");
  avg->add_option("--d", avg_d, "lattice dimension")->capture_default_str();
  avg->add_option("--dirs", avg_dirs,
                  "directions: e1, -e2, diag, antidiag, or x:y form")
      ->delimiter(',')
      ->capture_default_str();
  avg->add_option("--growth", avg_growth, "sqrt or linear")->capture_default_str();
  avg->add_option("--eps", avg_eps, "epsilon for linear growth")
      ->capture_default_str();
  avg->add_option("--t-min", avg_tmin, "schedule start")->capture_default_str();
  avg->add_option("--t-max", avg_tmax, "schedule end")->capture_default_str();
  avg->add_option("--steps", avg_steps, "schedule point count")
      ->capture_default_str();
  avg->add_option("--tol", avg_tol, "direction-consistency tolerance")
      ->capture_default_str();
  avg->add_option("--normalization", avg_norm, "count or volume")
      ->capture_default_str();
  avg->add_flag("--expect-consistent", avg_expect_consistent,
                "exit nonzero if the verdict is direction_dependent");
  avg->add_option("--out-prefix", avg_prefix, "output path prefix")
      ->capture_default_str();
  avg->add_option("--threads", avg_threads, "worker cap; results do not depend on it")
      ->capture_default_str();
  avg->add_option("--seed", avg_seed, "seed echoed into the config")
      ->capture_default_str();

  // ---- riesz-demo
  auto* riesz = app.add_subcommand(
      "riesz-demo",
      "Greedy lacunary sums, frequency ladders, sign-pattern checks, and "
      "blow-up certificates over a list of N");
  std::vector<int> riesz_n = {4, 6, 8, 10, 12};
  int riesz_l = 1, riesz_threads = 1;
  Index riesz_base = 100;
  std::size_t riesz_grid = 256;
  bool riesz_asym = false, riesz_brute = false;
  std::string riesz_prefix = "riesz";
  riesz->add_option("--n-list", riesz_n, "values of N")
      ->delimiter(',')
      ->capture_default_str();
  riesz->add_option("--l", riesz_l, "smoothness exponent (>= 1)")
      ->capture_default_str();
  riesz->add_option("--base", riesz_base, "minimum first ladder height")
      ->capture_default_str();
  riesz->add_option("--grid", riesz_grid, "sup-norm evaluation grid side")
      ->capture_default_str();
  riesz->add_flag("--asymmetric", riesz_asym, "use the (1+eps)/2 comparison");
  riesz->add_flag("--brute-check", riesz_brute,
                  "cross-check coefficients against the expansion route (N <= 8)");
  riesz->add_option("--out-prefix", riesz_prefix, "output path prefix")
      ->capture_default_str();
  riesz->add_option("--threads", riesz_threads, "worker cap")->capture_default_str();

  // ---- projection-demo
  auto* proj = app.add_subcommand(
      "projection-demo",
      "Structural-condition checks, direction averages of the kernel "
      "projection, and the constant-matrix feasibility verdict");
  std::string proj_matrix = "curl2", proj_prefix = "projection";
  std::vector<std::string> proj_dirs = {"e1", "e2"};
  std::vector<double> proj_eps = {0.05};
  std::vector<double> proj_t = {};
  int proj_d = 2, proj_samples = 360, proj_threads = 1;
  double proj_tol = 0.1, proj_svtol = 0.05;
  proj->add_option("--matrix", proj_matrix,
                   "builtin (curl2, curl3_completed, gradient_d, diag_omega1, "
                   "identity) or a .json sphere table");
  proj->add_option("--d", proj_d, "dimension for builtins that take one")
      ->capture_default_str();
  proj->add_option("--dirs", proj_dirs, "ray directions for the averages")
      ->delimiter(',')
      ->capture_default_str();
  proj->add_option("--eps-list", proj_eps, "linear growth epsilons")
      ->delimiter(',')
      ->capture_default_str();
  proj->add_option("--t-list", proj_t,
                   "t values for the averages (default depends on dimension)")
      ->delimiter(',');
  proj->add_option("--tol", proj_tol, "feasibility residual threshold")
      ->capture_default_str();
  proj->add_option("--sv-tol", proj_svtol, "singular-value degeneracy threshold")
      ->capture_default_str();
  proj->add_option("--sphere-samples", proj_samples, "directions sampled on the sphere")
      ->capture_default_str();
  proj->add_option("--out-prefix", proj_prefix, "output path prefix")
      ->capture_default_str();
  proj->add_option("--threads", proj_threads, "worker cap")->capture_default_str();

  // ---- transfer-check
  auto* transfer = app.add_subcommand(
      "transfer-check",
      "Continuous-ball average of the extended symbol vs the scaled lattice "
      "average, along a t-schedule");
  std::string tr_symbol = "orthant", tr_dir = "e1", tr_growth = "sqrt";
  std::string tr_prefix = "transfer";
  std::vector<double> tr_t = {1e3, 1e4};
  int tr_d = 2, tr_quad = 16;
  double tr_eps = 0.1;
  transfer->add_option("--symbol", tr_symbol, "builtin name or .json symbol file")
      ->capture_default_str();
  transfer->add_option("--d", tr_d, "lattice dimension")->capture_default_str();
  transfer->add_option("--dir", tr_dir, "ray direction")->capture_default_str();
  transfer->add_option("--growth", tr_growth, "sqrt or linear")
      ->capture_default_str();
  transfer->add_option("--eps", tr_eps, "epsilon for linear growth")
      ->capture_default_str();
  transfer->add_option("--t-list", tr_t, "t values")
      ->delimiter(',')
      ->capture_default_str();
  transfer->add_option("--quad-res", tr_quad, "quadrature points per unit length (>= 8)")
      ->capture_default_str();
  transfer->add_option("--out-prefix", tr_prefix, "output path prefix")
      ->capture_default_str();

  // ---- replay
  auto* replay = app.add_subcommand(
      "replay", "re-run a subcommand from its emitted .config.json echo");
  std::string replay_path, replay_prefix;
  int replay_threads = -1;
  replay->add_option("config", replay_path, "path to a .config.json echo")
      ->required();
  replay->add_option("--out-prefix", replay_prefix, "override the output prefix");
  replay->add_option("--threads", replay_threads, "override the worker cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (avg->parsed()) {
      Json growth{{"kind", avg_growth}};
      if (avg_growth == "linear") growth["eps"] = avg_eps;
      Json cfg{{"subcommand", "average"},
               {"d", avg_d},
               {"directions", avg_dirs},
               {"growth", growth},
               {"t_min", avg_tmin},
               {"t_max", avg_tmax},
               {"steps", avg_steps},
               {"tolerance", avg_tol},
               {"normalization", avg_norm},
               {"expect_consistent", avg_expect_consistent},
               {"out_prefix", avg_prefix},
               {"threads", avg_threads},
               {"seed", avg_seed}};
      if (!avg_measure.empty()) {
        cfg["measure"] = measure_to_json(measure_from_json(load_json_file(avg_measure)));
        cfg["theorem_check"] = avg_theorem;
        cfg["recover_atoms"] = avg_recover;
      } else {
        cfg["symbol"] = avg_symbol;
      }
      return run_average(cfg);
    }
    if (riesz->parsed()) {
      const Json cfg{{"subcommand", "riesz-demo"}, {"n_list", riesz_n},
                     {"l", riesz_l},           {"base", riesz_base},
                     {"grid", riesz_grid},     {"asymmetric", riesz_asym},
                     {"brute_check", riesz_brute}, {"out_prefix", riesz_prefix},
                     {"threads", riesz_threads}};
      return run_riesz(cfg);
    }
    if (proj->parsed()) {
      if (proj_t.empty())
        proj_t = proj_d >= 3 ? std::vector<double>{200.0, 500.0, 1000.0}
                             : std::vector<double>{1e3, 3162.2776601683795, 1e4};
      const Json cfg{{"subcommand", "projection-demo"},
                     {"matrix", proj_matrix},
                     {"d", proj_d},
                     {"directions", proj_dirs},
                     {"eps_list", proj_eps},
                     {"t_list", proj_t},
                     {"tolerance", proj_tol},
                     {"sv_tolerance", proj_svtol},
                     {"sphere_samples", proj_samples},
                     {"out_prefix", proj_prefix},
                     {"threads", proj_threads}};
      return run_projection(cfg);
    }
    if (transfer->parsed()) {
      Json growth{{"kind", tr_growth}};
      if (tr_growth == "linear") growth["eps"] = tr_eps;
      const Json cfg{{"subcommand", "transfer-check"},
                     {"symbol", tr_symbol},
                     {"d", tr_d},
                     {"direction", tr_dir},
                     {"growth", growth},
                     {"t_list", tr_t},
                     {"quad_per_unit", tr_quad},
                     {"out_prefix", tr_prefix}};
      return run_transfer(cfg);
    }
    if (replay->parsed()) {
      Json cfg = load_json_file(replay_path);
      if (!replay_prefix.empty()) cfg["out_prefix"] = replay_prefix;
      if (replay_threads > 0 && cfg.contains("threads"))
        cfg["threads"] = replay_threads;
      return dispatch(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
