#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "specav/growth.hpp"
#include "specav/lattice.hpp"
#include "specav/measure.hpp"
#include "specav/symbol.hpp"

namespace specav {

struct BallSample {
  double t = 0.0;
  double r = 0.0;
  std::size_t count = 0;
  Complex average;
};

// Ball averages of a symbol along the ray t -> t*omega, with the radius
// taken from the schedule, plus an extrapolated limit from the least-squares
// model average(t) = L + C / r(t). The 1/r rate is a diagnostic fit, not a
// correctness claim.
struct WienerEstimate {
  Eigen::VectorXd direction;
  std::vector<BallSample> samples;
  Complex extrapolated_limit;
  Complex fit_slope;            // the C in L + C/r
  double fit_residual = 0.0;    // rms misfit over the samples
  bool degenerate_fit = false;  // fewer than 3 samples: limit = last sample
};

struct AveragingOptions {
  Normalization norm = Normalization::count;
  std::size_t max_points = 100'000'000;
  int threads = 1;
};

using Schedule = std::vector<std::pair<double, double>>;  // (t, r(t)) pairs

WienerEstimate wiener_average_sequence(const SymbolPtr& s, const Eigen::VectorXd& omega,
                                       const Schedule& sched,
                                       const AveragingOptions& opts = {});

enum class Verdict { consistent, direction_dependent };

struct DirectionVerdict {
  std::vector<WienerEstimate> estimates;
  double max_pairwise_deviation = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::consistent;
};

DirectionVerdict direction_dependence_test(const SymbolPtr& s,
                                           const std::vector<Eigen::VectorXd>& directions,
                                           const Schedule& sched, double tolerance,
                                           const AveragingOptions& opts = {});

// Compares the averaged squared transform of mu against sum |mass_j|^2.
struct WienerTheoremReport {
  WienerEstimate estimate;
  double expected_mass = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
};

WienerTheoremReport wiener_theorem_check(const AtomicMeasure& mu,
                                         const Eigen::VectorXd& omega,
                                         const Schedule& sched,
                                         const AveragingOptions& opts = {});

// Wiener limit of chi -> s(chi) exp(+i<chi, tau>); for s the transform of an
// atomic measure this recovers the mass at tau.
WienerEstimate atom_mass_recovery_sequence(const SymbolPtr& s, const Eigen::VectorXd& tau,
                                           const Eigen::VectorXd& omega,
                                           const Schedule& sched,
                                           const AveragingOptions& opts = {});
Complex atom_mass_recovery(const SymbolPtr& s, const Eigen::VectorXd& tau,
                           const Eigen::VectorXd& omega, const Schedule& sched,
                           const AveragingOptions& opts = {});

struct DiscretePartScan {
  std::vector<std::pair<Eigen::VectorXd, Complex>> candidate_masses;
  AtomicMeasure recovered;
  WienerEstimate residual;  // averages of |s - recovered transform|^2
  bool direction_dependent = false;
  std::optional<DirectionVerdict> direction_check;
};

// Runs mass recovery on every candidate position, keeps masses above the
// threshold, and reports the averaged squared residual (target: 0). When
// flag_directions is nonempty the symbol is also tested for direction
// dependence and the flag is set on failure; a flagged scan has no
// well-defined discrete part.
DiscretePartScan discrete_part_scan(const SymbolPtr& s,
                                    const std::vector<Eigen::VectorXd>& candidates,
                                    double threshold, const Eigen::VectorXd& omega,
                                    const Schedule& sched,
                                    const std::vector<Eigen::VectorXd>& flag_directions = {},
                                    double flag_tolerance = 0.02,
                                    const AveragingOptions& opts = {});

// Moving-ball average m_eps(xi): count-normalized lattice average of s over
// B(xi, eps |xi|). Throws std::domain_error when the ball is empty.
Complex averaged_symbol_m_eps(const SymbolPtr& s, double eps, const Eigen::VectorXd& xi,
                              const AveragingOptions& opts = {});

struct LipschitzReport {
  double eps = 0.0;
  double empirical_constant = 0.0;  // max |dm| |xi1| / |dxi| over the pairs
  double reference_bound = 0.0;     // 4 sup|s| / eps
  std::size_t pairs_evaluated = 0;
  Eigen::VectorXd worst_xi1, worst_xi2;
  bool within_reference = false;
};

// Empirical Lipschitz constant of m_eps over sampled pairs with
// |xi1| >= 1 and |xi1 - xi2| <= eps |xi1| / 2.
LipschitzReport lipschitz_certificate(
    const SymbolPtr& s, double eps,
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& pairs,
    const AveragingOptions& opts = {});

// Seeded pair sampler for the certificate: |xi1| log-uniform in
// [radius_min, radius_max], displacement length uniform in
// [min_separation, eps |xi1| / 2]. Pairs stay at least one lattice spacing
// apart by default; below that the discrete average is a step function and
// difference quotients degenerate.
std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> make_lipschitz_pairs(
    int d, double eps, std::size_t n, std::uint64_t seed, double radius_min = 1e2,
    double radius_max = 1e3, double min_separation = 1.0);

}  // namespace specav
