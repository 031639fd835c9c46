#include "specav/riesz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "specav/fft.hpp"

namespace specav {
namespace {

constexpr int kPatternGuard = 16;  // 3^N enumerations refuse beyond this

using Int128 = __int128;

Int128 ipow(Int128 base, int exp) {
  Int128 out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// Odometer over sign patterns (eps_1 .. eps_n) with eps_n != 0, for
// n = 1 .. N in sequence. Calls fn(pattern) for each.
template <class F>
void for_each_pattern(int N, F&& fn) {
  std::vector<std::int8_t> pattern;
  for (int n = 1; n <= N; ++n) {
    pattern.assign(static_cast<std::size_t>(n), -1);
    for (;;) {
      if (pattern.back() != 0) fn(pattern);
      int k = 0;
      while (k < n && pattern[static_cast<std::size_t>(k)] == 1) {
        pattern[static_cast<std::size_t>(k)] = -1;
        ++k;
      }
      if (k == n) break;
      ++pattern[static_cast<std::size_t>(k)];
    }
  }
}

std::vector<Index> pattern_frequency(const RieszProductSpec& spec,
                                     const std::vector<std::int8_t>& pattern) {
  const int d = spec.dimension();
  std::vector<Index> lambda(static_cast<std::size_t>(d), 0);
  for (std::size_t j = 0; j < pattern.size(); ++j) {
    if (pattern[j] == 0) continue;
    for (int i = 0; i < d; ++i)
      lambda[static_cast<std::size_t>(i)] +=
          static_cast<Index>(pattern[j]) * spec.frequencies[j][i];
  }
  return lambda;
}

Complex pattern_weight(const std::vector<std::int8_t>& pattern) {
  Complex w(1.0, 0.0);
  for (std::size_t j = 0; j < pattern.size(); ++j)
    if (pattern[j] != 0) w *= Complex(0.0, 0.25 / static_cast<double>(j + 1));
  return w;
}

void guard_pattern_count(int N, const char* who) {
  if (N > kPatternGuard)
    throw resource_limit_error(std::string(who) +
                               ": 3^N sign-pattern enumeration capped at N = " +
                               std::to_string(kPatternGuard));
}

P1Report check_p1_impl(const SymbolPtr& m, const RieszProductSpec& spec,
                       double tolerance, bool primed) {
  guard_pattern_count(spec.N, primed ? "check_P1prime" : "check_P1");
  spec.validate();
  if (!m || m->dimension() != spec.dimension())
    throw std::invalid_argument("check_P1: symbol/spec dimension mismatch");

  P1Report report;
  report.primed = primed;
  report.tolerance = tolerance > 0.0 ? tolerance : std::pow(4.0, -spec.N);

  std::vector<Index> lambda;
  for_each_pattern(spec.N, [&](const std::vector<std::int8_t>& pattern) {
    lambda = pattern_frequency(spec, pattern);
    const LatticePointRef chi(lambda.data(), static_cast<Eigen::Index>(lambda.size()));
    const std::size_t n = pattern.size();
    const double sigma_n = static_cast<double>(spec.sigma[n - 1]);
    const double target =
        primed ? 0.5 * (1.0 + static_cast<double>(pattern.back())) * sigma_n
               : sigma_n;
    const double dev = std::abs(m->eval(chi) - Complex(target, 0.0));
    if (dev > report.worst_deviation) {
      report.worst_deviation = dev;
      report.witness = pattern;
    }
  });
  report.passed = report.worst_deviation < report.tolerance;
  return report;
}

}  // namespace

GreedySigma greedy_sigma(int N) {
  if (N < 1) throw std::invalid_argument("greedy_sigma: N must be >= 1");
  GreedySigma out;
  out.N = N;
  out.sigma.reserve(static_cast<std::size_t>(N));
  out.partial_sums.reserve(static_cast<std::size_t>(N));
  Complex sum(0.0, 0.0);
  Complex prod(1.0, 0.0);  // prod_{j < n} (1 + i/(2j))
  for (int n = 1; n <= N; ++n) {
    const Complex term = Complex(0.0, 0.5 / static_cast<double>(n)) * prod;
    const int take = std::abs(sum + term) >= std::abs(sum) ? 1 : 0;
    if (take) sum += term;
    out.sigma.push_back(take);
    out.partial_sums.push_back(sum);
    prod *= Complex(1.0, 0.5 / static_cast<double>(n));
  }
  out.final_sum = sum;
  out.floor_value = std::log(static_cast<double>(N)) / (2.0 * M_PI);
  if (std::abs(sum) < out.floor_value)
    throw std::logic_error(
        "greedy_sigma: partial sum fell below ln(N)/(2 pi); greedy recursion "
        "is broken");
  return out;
}

LatticePoint FrequencyLadder::frequency(int n) const {
  if (n < 1 || n > N) throw std::out_of_range("FrequencyLadder::frequency");
  LatticePoint a = LatticePoint::Zero(d);
  a[0] = heights[static_cast<std::size_t>(n - 1)];
  return a;
}

FrequencyLadder build_frequencies(int N, int l, Index base, int d) {
  if (N < 1) throw std::invalid_argument("build_frequencies: N must be >= 1");
  if (d < 1) throw std::invalid_argument("build_frequencies: d must be >= 1");
  if (base < 2) throw std::invalid_argument("build_frequencies: base must be >= 2");
  if (l < 1)
    throw std::invalid_argument(
        "build_frequencies: l must be >= 1 (the smoothness predicate is "
        "unsatisfiable as written for l = 0)");

  // Smallest t_1 with t_1^l > 4^N; then the worst pattern denominator is
  // t_1 itself and the off-axis numerators are exactly 1.
  const Int128 four_n = ipow(4, N);
  Index t1 = static_cast<Index>(std::ceil(std::pow(4.0, double(N) / double(l))));
  while (t1 > 2 && ipow(t1 - 1, l) > four_n) --t1;
  while (ipow(t1, l) <= four_n) ++t1;
  t1 = std::max(base, t1);

  FrequencyLadder ladder;
  ladder.N = N;
  ladder.d = d;
  ladder.l = l;
  ladder.heights.reserve(static_cast<std::size_t>(N));
  Index t = t1;
  for (int n = 1; n <= N; ++n) {
    ladder.heights.push_back(t);
    if (n < N) {
      if (t > std::numeric_limits<Index>::max() / 5)
        throw unsatisfiable_at_scale_error(
            "build_frequencies: ladder height overflows 64-bit integers at "
            "n = " + std::to_string(n + 1) +
            " (N = " + std::to_string(N) + ", l = " + std::to_string(l) + ")",
            n + 1);
      t *= 5;
    }
  }

  // Exact predicate report. Ladder ratio 5 makes the all-minus pattern the
  // worst case for each n, so the minima are closed-form.
  LadderReport report;
  report.p2 = true;
  for (int n = 0; n + 1 < N; ++n)
    report.p2 = report.p2 && 4 * ladder.heights[static_cast<std::size_t>(n)] <
                                 ladder.heights[static_cast<std::size_t>(n + 1)];
  Int128 prefix = 0;
  Int128 worst = ipow(ladder.heights[0], 1);
  for (int n = 0; n < N; ++n) {
    const Int128 dn = Int128(ladder.heights[static_cast<std::size_t>(n)]) - prefix;
    worst = std::min(worst, dn);
    prefix += ladder.heights[static_cast<std::size_t>(n)];
  }
  report.p3 = worst > 0;
  report.worst_denominator = static_cast<Index>(worst);
  report.p4 = worst > 0 && ipow(worst, l) > four_n;
  ladder.report = report;

  if (!report.p4)
    throw unsatisfiable_at_scale_error(
        "build_frequencies: smoothness predicate fails at n = 1 despite "
        "maximal first height (N = " + std::to_string(N) +
        ", l = " + std::to_string(l) + ")",
        1);
  return ladder;
}

int RieszProductSpec::dimension() const {
  if (frequencies.empty())
    throw std::invalid_argument("RieszProductSpec: no frequencies");
  return static_cast<int>(frequencies.front().size());
}

void RieszProductSpec::validate() const {
  if (N < 1) throw std::invalid_argument("RieszProductSpec: N must be >= 1");
  if (static_cast<int>(sigma.size()) != N ||
      static_cast<int>(frequencies.size()) != N)
    throw std::invalid_argument("RieszProductSpec: sigma/frequencies must have N entries");
  for (int s : sigma)
    if (s != 0 && s != 1)
      throw std::invalid_argument("RieszProductSpec: sigma entries must be 0 or 1");
  const int d = dimension();
  for (const auto& a : frequencies)
    if (static_cast<int>(a.size()) != d)
      throw std::invalid_argument("RieszProductSpec: frequency dimension mismatch");
  for (int n = 0; n < N; ++n) {
    if (frequencies[static_cast<std::size_t>(n)][0] == 0)
      throw std::invalid_argument("RieszProductSpec: a_n(1) must be nonzero");
    if (n + 1 < N &&
        !(4 * std::abs(frequencies[static_cast<std::size_t>(n)][0]) <
          std::abs(frequencies[static_cast<std::size_t>(n + 1)][0])))
      throw std::invalid_argument(
          "RieszProductSpec: ladder growth 4|a_n(1)| < |a_{n+1}(1)| violated at n = " +
          std::to_string(n + 1));
  }
}

RieszProductSpec make_riesz_spec(const GreedySigma& greedy,
                                 const FrequencyLadder& ladder, bool asymmetric) {
  if (greedy.N != ladder.N)
    throw std::invalid_argument("make_riesz_spec: greedy/ladder size mismatch");
  RieszProductSpec spec;
  spec.N = ladder.N;
  spec.sigma = greedy.sigma;
  spec.l = ladder.l;
  spec.asymmetric = asymmetric;
  spec.frequencies.reserve(static_cast<std::size_t>(ladder.N));
  for (int n = 1; n <= ladder.N; ++n) spec.frequencies.push_back(ladder.frequency(n));
  spec.validate();
  return spec;
}

Complex SpectrumPolynomial::eval(const Eigen::VectorXd& x) const {
  if (x.size() != d)
    throw std::invalid_argument("SpectrumPolynomial::eval: dimension mismatch");
  Complex value(0.0, 0.0);
  for (const auto& [lambda, coeff] : coefficients) {
    double phase = 0.0;
    for (int i = 0; i < d; ++i)
      phase += x[i] * static_cast<double>(lambda[static_cast<std::size_t>(i)]);
    value += coeff.value * std::polar(1.0, phase);
  }
  return value;
}

Complex SpectrumPolynomial::at_zero() const {
  Complex value(0.0, 0.0);
  for (const auto& [lambda, coeff] : coefficients) value += coeff.value;
  return value;
}

std::vector<Complex> grid_evaluate(const SpectrumPolynomial& poly, std::size_t M,
                                   std::size_t max_grid_values) {
  if (!is_power_of_two(M))
    throw std::invalid_argument("grid_evaluate: grid side must be a power of two");
  if (poly.d != 1 && poly.d != 2)
    throw std::invalid_argument("grid_evaluate: supported for d = 1, 2");
  std::size_t total = M;
  if (poly.d == 2) {
    if (M > max_grid_values / M)
      throw resource_limit_error("grid_evaluate: grid of " + std::to_string(M) +
                                 "^2 values exceeds cap " +
                                 std::to_string(max_grid_values));
    total = M * M;
  }
  if (total > max_grid_values)
    throw resource_limit_error("grid_evaluate: grid exceeds cap " +
                               std::to_string(max_grid_values));

  std::vector<Complex> data(total, Complex(0.0, 0.0));
  const auto fold = [M](Index v) {
    const Index m = static_cast<Index>(M);
    Index r = v % m;
    if (r < 0) r += m;
    return static_cast<std::size_t>(r);
  };
  for (const auto& [lambda, coeff] : poly.coefficients) {
    std::size_t idx = fold(lambda[0]);
    if (poly.d == 2) idx = idx * M + fold(lambda[1]);
    data[idx] += coeff.value;
  }
  // e^{i <x_k, lambda>} at x_k = 2 pi k / M is the sign=+1 kernel on the
  // folded coefficients, exactly.
  if (poly.d == 1)
    fft_inplace(data, +1);
  else
    fft2_inplace(data, M, M, +1);
  return data;
}

SpectrumPolynomial target_polynomial(const SymbolPtr& m, const RieszProductSpec& spec) {
  guard_pattern_count(spec.N, "target_polynomial");
  spec.validate();
  if (!m || m->dimension() != spec.dimension())
    throw std::invalid_argument("target_polynomial: symbol/spec dimension mismatch");

  SpectrumPolynomial poly;
  poly.d = spec.dimension();
  for_each_pattern(spec.N, [&](const std::vector<std::int8_t>& pattern) {
    std::vector<Index> lambda = pattern_frequency(spec, pattern);
    const LatticePointRef chi(lambda.data(), static_cast<Eigen::Index>(lambda.size()));
    const Complex value = m->eval(chi) * pattern_weight(pattern);
    const auto [it, inserted] = poly.coefficients.emplace(
        std::move(lambda), SpectrumCoefficient{value, pattern});
    if (!inserted)
      throw std::logic_error(
          "target_polynomial: two sign patterns produced the same frequency; "
          "the ladder growth invariant is broken");
  });
  return poly;
}

SpectrumPolynomial comparison_polynomial(const RieszProductSpec& spec) {
  guard_pattern_count(spec.N, "comparison_polynomial");
  spec.validate();

  SpectrumPolynomial poly;
  poly.d = spec.dimension();
  for_each_pattern(spec.N, [&](const std::vector<std::int8_t>& pattern) {
    std::vector<Index> lambda = pattern_frequency(spec, pattern);
    const std::size_t n = pattern.size();
    double amp = static_cast<double>(spec.sigma[n - 1]);
    if (spec.asymmetric)
      amp *= 0.5 * (1.0 + static_cast<double>(pattern.back()));
    const Complex value = amp * pattern_weight(pattern);
    const auto [it, inserted] = poly.coefficients.emplace(
        std::move(lambda), SpectrumCoefficient{value, pattern});
    if (!inserted)
      throw std::logic_error(
          "comparison_polynomial: two sign patterns produced the same "
          "frequency; the ladder growth invariant is broken");
  });
  return poly;
}

SpectrumPolynomial expansion_route_target(const SymbolPtr& m,
                                          const RieszProductSpec& spec) {
  guard_pattern_count(spec.N, "expansion_route_target");
  spec.validate();
  if (!m || m->dimension() != spec.dimension())
    throw std::invalid_argument("expansion_route_target: dimension mismatch");
  const int d = spec.dimension();

  const auto expand = [&](const std::vector<Complex>& weights) {
    std::map<std::vector<Index>, Complex> acc;
    acc[std::vector<Index>(static_cast<std::size_t>(d), 0)] = Complex(1.0, 0.0);
    for (int n = 0; n < spec.N; ++n) {
      std::map<std::vector<Index>, Complex> factor;
      std::vector<Index> plus(static_cast<std::size_t>(d)), minus(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        plus[static_cast<std::size_t>(i)] = spec.frequencies[static_cast<std::size_t>(n)][i];
        minus[static_cast<std::size_t>(i)] = -spec.frequencies[static_cast<std::size_t>(n)][i];
      }
      factor[std::vector<Index>(static_cast<std::size_t>(d), 0)] = Complex(1.0, 0.0);
      factor[plus] += 0.5 * weights[static_cast<std::size_t>(n)];
      factor[minus] += 0.5 * weights[static_cast<std::size_t>(n)];
      std::map<std::vector<Index>, Complex> next;
      for (const auto& [la, ca] : acc)
        for (const auto& [lf, cf] : factor) {
          std::vector<Index> key(static_cast<std::size_t>(d));
          for (int i = 0; i < d; ++i)
            key[static_cast<std::size_t>(i)] =
                la[static_cast<std::size_t>(i)] + lf[static_cast<std::size_t>(i)];
          next[key] += ca * cf;
        }
      acc = std::move(next);
    }
    acc[std::vector<Index>(static_cast<std::size_t>(d), 0)] -= Complex(1.0, 0.0);
    return acc;
  };

  std::vector<Complex> riesz_weights, plain_weights;
  for (int n = 1; n <= spec.N; ++n) {
    riesz_weights.emplace_back(0.0, 1.0 / static_cast<double>(n));
    plain_weights.emplace_back(1.0, 0.0);
  }
  const auto riesz = expand(riesz_weights);
  const auto plain = expand(plain_weights);

  SpectrumPolynomial poly;
  poly.d = d;
  for (const auto& [lambda, cr] : riesz) {
    const auto it = plain.find(lambda);
    if (it == plain.end()) continue;
    std::vector<Index> key = lambda;
    const LatticePointRef chi(key.data(), static_cast<Eigen::Index>(key.size()));
    const Complex value = m->eval(chi) * cr * it->second;
    if (std::abs(value) == 0.0 && lambda == std::vector<Index>(static_cast<std::size_t>(d), 0))
      continue;  // the subtracted constants leave an exact zero at the origin
    poly.coefficients.emplace(std::move(key), SpectrumCoefficient{value, {}});
  }
  return poly;
}

P1Report check_P1(const SymbolPtr& m, const RieszProductSpec& spec, double tolerance) {
  return check_p1_impl(m, spec, tolerance, false);
}

P1Report check_P1prime(const SymbolPtr& m, const RieszProductSpec& spec,
                       double tolerance) {
  return check_p1_impl(m, spec, tolerance, true);
}

BlowupCertificate blowup_certificate(const SymbolPtr& m, const RieszProductSpec& spec,
                                     std::size_t grid_size, const P1Report& p1) {
  if (p1.tolerance <= 0.0)
    throw std::invalid_argument(
        "blowup_certificate: no sign-pattern report supplied; run check_P1 "
        "(or check_P1prime) first and pass its report");

  const SpectrumPolynomial target = target_polynomial(m, spec);
  const SpectrumPolynomial comparison = comparison_polynomial(spec);

  BlowupCertificate cert;
  cert.N = spec.N;
  cert.p1_passed = p1.passed;
  double l1 = 0.0;
  auto it_t = target.coefficients.begin();
  auto it_z = comparison.coefficients.begin();
  while (it_t != target.coefficients.end() || it_z != comparison.coefficients.end()) {
    if (it_z == comparison.coefficients.end() ||
        (it_t != target.coefficients.end() && it_t->first < it_z->first)) {
      l1 += std::abs(it_t->second.value);
      ++it_t;
    } else if (it_t == target.coefficients.end() || it_z->first < it_t->first) {
      l1 += std::abs(it_z->second.value);
      ++it_z;
    } else {
      l1 += std::abs(it_t->second.value - it_z->second.value);
      ++it_t;
      ++it_z;
    }
  }
  cert.coeff_l1_deviation = l1;
  cert.bound_a = std::pow(3.0, spec.N) * std::pow(4.0, -spec.N);
  cert.pass_a = cert.coeff_l1_deviation <= cert.bound_a;

  cert.z0_abs = std::abs(comparison.at_zero());
  // The asymmetric comparison keeps only the +1 leading signs, which halves
  // the value at the origin and with it the attainable floor.
  cert.bound_b = std::log(static_cast<double>(spec.N)) / (2.0 * M_PI) /
                 (spec.asymmetric ? 2.0 : 1.0);
  cert.pass_b = cert.z0_abs >= cert.bound_b;

  double sup = std::abs(target.at_zero());
  for (const Complex& v : grid_evaluate(target, grid_size))
    sup = std::max(sup, std::abs(v));
  cert.grid_sup = sup;
  cert.sup_floor = cert.bound_b - 1.0;
  cert.pass_c = cert.grid_sup >= cert.sup_floor;

  cert.pass = cert.p1_passed && cert.pass_a && cert.pass_b && cert.pass_c;
  return cert;
}

SymbolPtr shell_symbol_for(const RieszProductSpec& spec, double width) {
  spec.validate();
  std::vector<double> amplitudes, radii;
  amplitudes.reserve(static_cast<std::size_t>(spec.N));
  radii.reserve(static_cast<std::size_t>(spec.N));
  for (int n = 0; n < spec.N; ++n) {
    amplitudes.push_back(static_cast<double>(spec.sigma[static_cast<std::size_t>(n)]));
    radii.push_back(static_cast<double>(
        std::abs(spec.frequencies[static_cast<std::size_t>(n)][0])));
  }
  Eigen::VectorXd axis = Eigen::VectorXd::Zero(spec.dimension());
  axis[0] = 1.0;
  return shell_oscillator(std::move(amplitudes), std::move(radii), std::move(axis),
                          width);
}

}  // namespace specav
