#include "specav/wiener.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "specav/parallel.hpp"

namespace specav {
namespace {

void require_unit(const Eigen::VectorXd& omega) {
  if (std::abs(omega.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("direction must be a unit vector (within 1e-12)");
}

void require_dimension(const SymbolPtr& s, const Eigen::VectorXd& v) {
  if (!s) throw std::invalid_argument("null symbol");
  if (s->dimension() != v.size())
    throw std::invalid_argument("symbol/vector dimension mismatch");
}

// Least-squares fit of average(t) = L + C / r(t) over the samples.
void fit_limit(WienerEstimate& est) {
  const std::size_t n = est.samples.size();
  if (n == 0) throw std::invalid_argument("wiener fit: no samples");
  if (n < 3) {
    est.extrapolated_limit = est.samples.back().average;
    est.fit_slope = Complex(0.0, 0.0);
    est.fit_residual = 0.0;
    est.degenerate_fit = true;
    return;
  }
  Eigen::MatrixXd design(n, 2);
  Eigen::MatrixXd rhs(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    design(static_cast<Eigen::Index>(i), 0) = 1.0;
    design(static_cast<Eigen::Index>(i), 1) = 1.0 / est.samples[i].r;
    rhs(static_cast<Eigen::Index>(i), 0) = est.samples[i].average.real();
    rhs(static_cast<Eigen::Index>(i), 1) = est.samples[i].average.imag();
  }
  const Eigen::MatrixXd coef = design.colPivHouseholderQr().solve(rhs);
  est.extrapolated_limit = Complex(coef(0, 0), coef(0, 1));
  est.fit_slope = Complex(coef(1, 0), coef(1, 1));
  est.fit_residual =
      std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(n));
  est.degenerate_fit = false;
}

}  // namespace

WienerEstimate wiener_average_sequence(const SymbolPtr& s, const Eigen::VectorXd& omega,
                                       const Schedule& sched,
                                       const AveragingOptions& opts) {
  require_dimension(s, omega);
  require_unit(omega);
  if (sched.empty()) throw std::invalid_argument("schedule must be nonempty");

  WienerEstimate est;
  est.direction = omega;
  est.samples.resize(sched.size());
  parallel_for(sched.size(), opts.threads, [&](std::size_t i) {
    const auto [t, r] = sched[i];
    const LatticeBall ball = enumerate_ball(t * omega, r, opts.max_points);
    const Complex avg =
        ball_average(ball, [&](LatticePointRef chi) { return s->eval(chi); },
                     opts.norm);
    est.samples[i] = BallSample{t, r, ball.count, avg};
  });
  fit_limit(est);
  return est;
}

DirectionVerdict direction_dependence_test(const SymbolPtr& s,
                                           const std::vector<Eigen::VectorXd>& directions,
                                           const Schedule& sched, double tolerance,
                                           const AveragingOptions& opts) {
  if (directions.size() < 2)
    throw std::invalid_argument("direction_dependence_test needs >= 2 directions");
  DirectionVerdict verdict;
  verdict.tolerance = tolerance;
  verdict.estimates.resize(directions.size());
  AveragingOptions inner = opts;
  inner.threads = 1;  // parallelism lives at the direction level
  parallel_for(directions.size(), opts.threads, [&](std::size_t i) {
    verdict.estimates[i] = wiener_average_sequence(s, directions[i], sched, inner);
  });
  for (std::size_t i = 0; i < verdict.estimates.size(); ++i)
    for (std::size_t j = i + 1; j < verdict.estimates.size(); ++j)
      verdict.max_pairwise_deviation =
          std::max(verdict.max_pairwise_deviation,
                   std::abs(verdict.estimates[i].extrapolated_limit -
                            verdict.estimates[j].extrapolated_limit));
  verdict.verdict = verdict.max_pairwise_deviation <= tolerance
                        ? Verdict::consistent
                        : Verdict::direction_dependent;
  return verdict;
}

WienerTheoremReport wiener_theorem_check(const AtomicMeasure& mu,
                                         const Eigen::VectorXd& omega,
                                         const Schedule& sched,
                                         const AveragingOptions& opts) {
  WienerTheoremReport report;
  report.estimate = wiener_average_sequence(
      squared_modulus(atomic_transform(mu)), omega, sched, opts);
  report.expected_mass = autocorrelation_mass(mu);
  report.abs_error =
      std::abs(report.estimate.extrapolated_limit - report.expected_mass);
  report.rel_error = report.expected_mass > 0.0
                         ? report.abs_error / report.expected_mass
                         : report.abs_error;
  return report;
}

WienerEstimate atom_mass_recovery_sequence(const SymbolPtr& s, const Eigen::VectorXd& tau,
                                           const Eigen::VectorXd& omega,
                                           const Schedule& sched,
                                           const AveragingOptions& opts) {
  return wiener_average_sequence(modulate(s, tau), omega, sched, opts);
}

Complex atom_mass_recovery(const SymbolPtr& s, const Eigen::VectorXd& tau,
                           const Eigen::VectorXd& omega, const Schedule& sched,
                           const AveragingOptions& opts) {
  return atom_mass_recovery_sequence(s, tau, omega, sched, opts).extrapolated_limit;
}

DiscretePartScan discrete_part_scan(const SymbolPtr& s,
                                    const std::vector<Eigen::VectorXd>& candidates,
                                    double threshold, const Eigen::VectorXd& omega,
                                    const Schedule& sched,
                                    const std::vector<Eigen::VectorXd>& flag_directions,
                                    double flag_tolerance,
                                    const AveragingOptions& opts) {
  require_dimension(s, omega);
  std::vector<std::pair<Eigen::VectorXd, Complex>> masses(candidates.size());
  AveragingOptions inner = opts;
  inner.threads = 1;
  parallel_for(candidates.size(), opts.threads, [&](std::size_t i) {
    masses[i] = {candidates[i],
                 atom_mass_recovery(s, candidates[i], omega, sched, inner)};
  });

  std::vector<Atom> kept;
  for (const auto& [tau, mass] : masses)
    if (std::abs(mass) > threshold) kept.push_back(Atom{tau, mass});

  AtomicMeasure recovered = [&] {
    try {
      return AtomicMeasure(s->dimension(), kept);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(
          std::string("discrete_part_scan: recovered atoms overlap and cannot "
                      "be consolidated: ") +
          e.what());
    }
  }();

  const SymbolPtr diff = sum({s, atomic_transform(recovered)},
                             {Complex(1.0, 0.0), Complex(-1.0, 0.0)});
  WienerEstimate residual =
      wiener_average_sequence(squared_modulus(diff), omega, sched, opts);

  DiscretePartScan scan{std::move(masses), std::move(recovered),
                        std::move(residual), false, std::nullopt};
  if (flag_directions.size() >= 2) {
    scan.direction_check = direction_dependence_test(s, flag_directions, sched,
                                                     flag_tolerance, opts);
    scan.direction_dependent =
        scan.direction_check->verdict == Verdict::direction_dependent;
  }
  return scan;
}

Complex averaged_symbol_m_eps(const SymbolPtr& s, double eps, const Eigen::VectorXd& xi,
                              const AveragingOptions& opts) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("m_eps requires eps in (0, 1/2)");
  require_dimension(s, Eigen::VectorXd(xi));
  const LatticeBall ball = enumerate_ball(xi, eps * xi.norm(), opts.max_points);
  if (ball.count == 0)
    throw std::domain_error("m_eps: ball B(xi, eps|xi|) contains no lattice point");
  return ball_average(ball, [&](LatticePointRef chi) { return s->eval(chi); },
                      Normalization::count);
}

LipschitzReport lipschitz_certificate(
    const SymbolPtr& s, double eps,
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& pairs,
    const AveragingOptions& opts) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("lipschitz_certificate requires eps in (0, 1/2)");
  if (pairs.empty())
    throw std::invalid_argument("lipschitz_certificate: no sample pairs");

  std::vector<double> ratios(pairs.size(), 0.0);
  AveragingOptions inner = opts;
  inner.threads = 1;
  parallel_for(pairs.size(), opts.threads, [&](std::size_t i) {
    const auto& [xi1, xi2] = pairs[i];
    const double r1 = xi1.norm();
    const double sep = (xi1 - xi2).norm();
    if (!(r1 >= 1.0))
      throw std::invalid_argument("lipschitz pair: |xi1| must be >= 1");
    if (!(sep > 0.0) || sep > 0.5 * eps * r1 * (1.0 + 1e-12))
      throw std::invalid_argument(
          "lipschitz pair: need 0 < |xi1 - xi2| <= eps |xi1| / 2");
    const Complex m1 = averaged_symbol_m_eps(s, eps, xi1, inner);
    const Complex m2 = averaged_symbol_m_eps(s, eps, xi2, inner);
    ratios[i] = std::abs(m1 - m2) * r1 / sep;
  });

  LipschitzReport report;
  report.eps = eps;
  report.pairs_evaluated = pairs.size();
  std::size_t worst = 0;
  for (std::size_t i = 0; i < ratios.size(); ++i)
    if (ratios[i] > ratios[worst]) worst = i;
  report.empirical_constant = ratios[worst];
  report.worst_xi1 = pairs[worst].first;
  report.worst_xi2 = pairs[worst].second;
  report.reference_bound = 4.0 * s->sup_bound() / eps;
  report.within_reference = report.empirical_constant <= report.reference_bound;
  return report;
}

std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> make_lipschitz_pairs(
    int d, double eps, std::size_t n, std::uint64_t seed, double radius_min,
    double radius_max, double min_separation) {
  if (d <= 0) throw std::invalid_argument("make_lipschitz_pairs: d must be >= 1");
  if (!(radius_min >= 1.0 && radius_max >= radius_min))
    throw std::invalid_argument("make_lipschitz_pairs: bad radius range");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto random_unit = [&] {
    Eigen::VectorXd v(d);
    do {
      for (int i = 0; i < d; ++i) v[i] = gauss(rng);
    } while (v.norm() == 0.0);
    return Eigen::VectorXd(v / v.norm());
  };

  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = radius_min * std::pow(radius_max / radius_min, unit(rng));
    const Eigen::VectorXd xi1 = radius * random_unit();
    const double sep_max = 0.5 * eps * xi1.norm();
    const double sep_min = std::min(min_separation, 0.5 * sep_max);
    const double sep = sep_min + (sep_max - sep_min) * unit(rng);
    pairs.emplace_back(xi1, Eigen::VectorXd(xi1 + sep * random_unit()));
  }
  return pairs;
}

}  // namespace specav
