#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "specav/lattice.hpp"
#include "specav/symbol.hpp"

namespace specav {

// Greedy 0/1 selection for the lacunary partial sums
//   S_n = S_{n-1} + sigma_n * (i / (2n)) * prod_{j<n} (1 + i/(2j)),
// choosing sigma_n to maximize |S_n|. The leading factor i is kept inside
// the partial sum so that S_N coincides with the comparison polynomial at
// x = 0; it does not change any modulus. The final modulus is checked
// against the floor ln(N) / (2 pi); a violation is an implementation bug,
// not an input error.
struct GreedySigma {
  int N = 0;
  std::vector<int> sigma;              // in {0, 1}
  std::vector<Complex> partial_sums;   // S_1 .. S_N
  Complex final_sum;                   // S_N
  double floor_value = 0.0;            // ln(N) / (2 pi)
};

GreedySigma greedy_sigma(int N);

// Frequency ladder a_n = t_n e_1 with t_1 >= base and t_{n+1} = 5 t_n.
// The first height is raised above the requested base when needed so that
// the smoothness predicate holds for the given l; if that cannot be done
// within 64-bit integers the ladder is unsatisfiable at this scale.
struct LadderReport {
  bool p2 = false;
  bool p3 = false;
  bool p4 = false;
  Index worst_denominator = 0;  // min over n, patterns of |a_n(1) + sum eps_j a_j(1)|
};

struct FrequencyLadder {
  int N = 0;
  int d = 0;
  int l = 0;
  std::vector<Index> heights;  // t_n
  LadderReport report;

  LatticePoint frequency(int n) const;  // t_n * e_1 as a d-vector
};

FrequencyLadder build_frequencies(int N, int l, Index base, int d = 2);

// N, sigma, frequency ladder and smoothness exponent for one construction.
// asymmetric selects the (1+eps_n)/2 comparison semantics.
struct RieszProductSpec {
  int N = 0;
  std::vector<int> sigma;
  std::vector<LatticePoint> frequencies;
  int l = 1;
  bool asymmetric = false;

  int dimension() const;
  void validate() const;  // growth 4|a_n(1)| < |a_{n+1}(1)|, a_n(1) != 0
};

RieszProductSpec make_riesz_spec(const GreedySigma& greedy,
                                 const FrequencyLadder& ladder,
                                 bool asymmetric = false);

// A trigonometric polynomial given by its coefficient map. Keys are the
// frequency vectors; each coefficient remembers the sign pattern that
// produced it. Map order (lexicographic) fixes all iteration orders.
struct SpectrumCoefficient {
  Complex value;
  std::vector<std::int8_t> pattern;  // eps_1 .. eps_n, trailing entry nonzero
};

struct SpectrumPolynomial {
  int d = 0;
  std::map<std::vector<Index>, SpectrumCoefficient> coefficients;

  Complex eval(const Eigen::VectorXd& x) const;  // direct summation
  Complex at_zero() const;                       // sum of coefficients
};

// Grid values of the polynomial at x_k = 2 pi k / M, k in [0, M)^d, via
// coefficient folding modulo M and a fast transform. Exact aliasing: the
// folded transform agrees with direct summation at every grid point.
std::vector<Complex> grid_evaluate(const SpectrumPolynomial& poly, std::size_t M,
                                   std::size_t max_grid_values = 1u << 24);

// Coefficients m(lambda) * prod_{eps_j != 0} i/(4j) over the spectrum
// lambda = sum eps_j a_j (trailing eps nonzero). Distinct patterns must map
// to distinct frequencies under the ladder growth; a collision aborts.
SpectrumPolynomial target_polynomial(const SymbolPtr& m, const RieszProductSpec& spec);

// The comparison polynomial: sigma_n * prod i/(4j), or with the additional
// (1+eps_n)/2 factor in the asymmetric case.
SpectrumPolynomial comparison_polynomial(const RieszProductSpec& spec);

// Slow route to the same coefficients: expand the two cosine products by
// iterated atom-list multiplication, convolve on the torus (coefficients
// multiply under normalized Haar measure), then apply the symbol. Shares
// nothing with the pattern-enumeration route; used for cross-checks.
SpectrumPolynomial expansion_route_target(const SymbolPtr& m,
                                          const RieszProductSpec& spec);

struct P1Report {
  bool primed = false;  // true when the (1+eps_n)/2 semantics were checked
  bool passed = false;
  double tolerance = 0.0;
  double worst_deviation = 0.0;
  std::vector<std::int8_t> witness;  // pattern attaining the worst deviation
};

// Exhaustive check of the symbol against sigma over all sign patterns.
// 3^N enumeration; guarded at N <= 16.
P1Report check_P1(const SymbolPtr& m, const RieszProductSpec& spec, double tolerance = -1.0);
P1Report check_P1prime(const SymbolPtr& m, const RieszProductSpec& spec,
                       double tolerance = -1.0);

struct BlowupCertificate {
  int N = 0;
  double coeff_l1_deviation = 0.0;  // sum over the spectrum of |T(lambda) - Z(lambda)|
  double bound_a = 0.0;             // 3^N 4^-N
  double z0_abs = 0.0;              // |Z(0)|
  double bound_b = 0.0;             // ln(N) / (2 pi)
  double grid_sup = 0.0;            // max |T| over the evaluation grid and x = 0
  double sup_floor = 0.0;           // ln(N) / (2 pi) - 1
  bool p1_passed = false;
  bool pass_a = false, pass_b = false, pass_c = false;
  bool pass = false;
};

// The coefficient comparison, the |Z(0)| floor, and a grid sup-norm witness
// for the target polynomial. Requires a P1 (or P1') report for (m, spec);
// run check_P1 first. The certificate records a failed precondition rather
// than silently proceeding.
BlowupCertificate blowup_certificate(const SymbolPtr& m, const RieszProductSpec& spec,
                                     std::size_t grid_size, const P1Report& p1);

// Shell symbol matched to the construction: amplitude sigma_n on the band
// around |a_n(1)| wide enough to cover every perturbed frequency
// eps_n a_n + sum_{j<n} eps_j a_j (the cluster spread is below t_n / 4 for
// ladder ratio 5, so width 0.3 covers it with margin).
SymbolPtr shell_symbol_for(const RieszProductSpec& spec, double width = 0.3);

}  // namespace specav
