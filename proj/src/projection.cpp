#include "specav/projection.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "specav/parallel.hpp"

namespace specav {
namespace {

double relative_residual(const Eigen::MatrixXcd& numerator,
                         const Eigen::MatrixXcd& reference) {
  const double den = reference.norm();
  const double num = numerator.norm();
  if (den == 0.0) return num == 0.0 ? 0.0 : num;
  return num / den;
}

// Entrywise least-squares fit avg(t) = L + C / r over the matrix samples.
void fit_matrix_limit(MatrixWienerEstimate& est, int size) {
  const std::size_t n = est.samples.size();
  if (n == 0) throw std::invalid_argument("gamma_estimate: no samples");
  if (n < 3) {
    est.limit = est.samples.back().average;
    est.fit_residual = 0.0;
    est.degenerate_fit = true;
    return;
  }
  Eigen::MatrixXd design(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    design(static_cast<Eigen::Index>(i), 0) = 1.0;
    design(static_cast<Eigen::Index>(i), 1) = 1.0 / est.samples[i].r;
  }
  const auto qr = design.colPivHouseholderQr();
  est.limit = Eigen::MatrixXcd::Zero(size, size);
  double sq_misfit = 0.0;
  Eigen::MatrixXd rhs(n, 2);
  for (int row = 0; row < size; ++row) {
    for (int col = 0; col < size; ++col) {
      for (std::size_t i = 0; i < n; ++i) {
        rhs(static_cast<Eigen::Index>(i), 0) = est.samples[i].average(row, col).real();
        rhs(static_cast<Eigen::Index>(i), 1) = est.samples[i].average(row, col).imag();
      }
      const Eigen::MatrixXd coef = qr.solve(rhs);
      est.limit(row, col) = Complex(coef(0, 0), coef(0, 1));
      sq_misfit += (design * coef - rhs).squaredNorm();
    }
  }
  est.fit_residual = std::sqrt(sq_misfit / static_cast<double>(n * size * size));
  est.degenerate_fit = false;
}

}  // namespace

MatrixSymbol::MatrixSymbol(int size, int d,
                           std::function<Eigen::MatrixXcd(const Eigen::VectorXd&)> eval,
                           std::string name)
    : size_(size), d_(d), eval_(std::move(eval)), name_(std::move(name)) {
  if (size_ < 1) throw std::invalid_argument("MatrixSymbol: size must be >= 1");
  if (d_ < 1) throw std::invalid_argument("MatrixSymbol: dimension must be >= 1");
  if (!eval_) throw std::invalid_argument("MatrixSymbol: null evaluator");
}

Eigen::MatrixXcd MatrixSymbol::operator()(const Eigen::VectorXd& direction) const {
  if (direction.size() != d_)
    throw std::invalid_argument("MatrixSymbol: direction dimension mismatch");
  const double norm = direction.norm();
  if (!(norm > 0.0))
    throw std::invalid_argument("MatrixSymbol: undefined at the zero direction");
  const Eigen::MatrixXcd value = eval_(direction / norm);
  if (value.rows() != size_ || value.cols() != size_)
    throw std::logic_error("MatrixSymbol: evaluator returned wrong size");
  return value;
}

MatrixSymbol builtin_matrix_symbol(const std::string& name, int d) {
  if (name == "curl2") {
    return MatrixSymbol(2, 2, [](const Eigen::VectorXd& w) {
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
      a(0, 0) = -w[1];
      a(0, 1) = w[0];
      return a;
    }, name);
  }
  if (name == "curl3_completed") {
    return MatrixSymbol(3, 3, [](const Eigen::VectorXd& w) {
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
      a(0, 1) = -w[2];
      a(0, 2) = w[1];
      a(1, 0) = w[2];
      a(1, 2) = -w[0];
      a(2, 0) = -w[1];
      a(2, 1) = w[0];
      return a;
    }, name);
  }
  if (name == "gradient_d") {
    if (d == 2) return builtin_matrix_symbol("curl2");
    if (d == 3) {
      // rows (1,2), (1,3), (2,3) of the pairwise differences
      // w_i u_j - w_j u_i; the kernel is span(w).
      return MatrixSymbol(3, 3, [](const Eigen::VectorXd& w) {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
        a(0, 0) = -w[1];
        a(0, 1) = w[0];
        a(1, 0) = -w[2];
        a(1, 2) = w[0];
        a(2, 1) = -w[2];
        a(2, 2) = w[1];
        return a;
      }, name);
    }
    throw std::invalid_argument("gradient_d is available for d in {2, 3}");
  }
  if (name == "diag_omega1") {
    return MatrixSymbol(2, 2, [](const Eigen::VectorXd& w) {
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
      a(0, 0) = w[0];
      a(1, 1) = w[0];
      return a;
    }, name);
  }
  if (name == "identity") {
    const int n = std::max(2, d);
    return MatrixSymbol(n, std::max(2, d), [n](const Eigen::VectorXd&) {
      return Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n, n));
    }, name);
  }
  throw std::invalid_argument("unknown matrix symbol: " + name);
}

std::vector<std::string> builtin_matrix_symbol_names() {
  return {"curl2", "curl3_completed", "gradient_d", "diag_omega1", "identity"};
}

PseudoinverseReport decell_pseudoinverse(const Eigen::MatrixXcd& A, double zero_tol) {
  const int n = static_cast<int>(A.rows());
  if (n < 1 || A.cols() != A.rows())
    throw std::invalid_argument("decell_pseudoinverse: square matrix required");
  if (!A.allFinite())
    throw std::invalid_argument("decell_pseudoinverse: entries must be finite");

  PseudoinverseReport report;
  const double scale = A.norm();  // Frobenius
  if (scale == 0.0) {
    report.charpoly = Eigen::VectorXd::Zero(n + 1);
    report.charpoly[0] = 1.0;
    report.s = 0;
    report.pinv = Eigen::MatrixXcd::Zero(n, n);
    report.penrose_residuals = {0.0, 0.0, 0.0, 0.0};
    return report;
  }

  const Eigen::MatrixXcd As = A / scale;
  const Eigen::MatrixXcd M = As * As.adjoint();

  // Faddeev-LeVerrier trace recursion on the scaled Gram matrix.
  Eigen::VectorXd c_scaled(n + 1);
  c_scaled[0] = 1.0;
  Eigen::MatrixXcd Mk = M;
  for (int k = 1; k <= n; ++k) {
    c_scaled[k] = -Mk.trace().real() / static_cast<double>(k);
    if (k < n) Mk = M * (Mk + c_scaled[k] * Eigen::MatrixXcd::Identity(n, n));
  }
  std::vector<Eigen::MatrixXcd> powers;  // M^0 .. M^{n-1}
  powers.reserve(static_cast<std::size_t>(n));
  powers.push_back(Eigen::MatrixXcd::Identity(n, n));
  for (int k = 1; k < n; ++k) powers.push_back(M * powers.back());

  const double cmax = c_scaled.cwiseAbs().maxCoeff();
  const double cutoff = zero_tol * cmax;
  int s = 0;
  for (int j = n; j >= 0; --j) {
    if (std::abs(c_scaled[j]) > cutoff) {
      s = j;
      break;
    }
  }
  report.s = s;
  report.near_threshold = s > 0 && std::abs(c_scaled[s]) < 10.0 * cutoff;

  // Report the coefficients of the unscaled AA*: c_j scales by scale^(2j).
  report.charpoly = Eigen::VectorXd(n + 1);
  for (int j = 0; j <= n; ++j)
    report.charpoly[j] = c_scaled[j] * std::pow(scale, 2 * j);

  if (s == 0) {
    report.pinv = Eigen::MatrixXcd::Zero(n, n);
  } else {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j <= s - 1; ++j) acc += c_scaled[j] * powers[static_cast<std::size_t>(s - 1 - j)];
    const Eigen::MatrixXcd pinv_scaled = -(1.0 / c_scaled[s]) * As.adjoint() * acc;
    report.pinv = pinv_scaled / scale;
  }

  const Eigen::MatrixXcd& X = report.pinv;
  const Eigen::MatrixXcd AX = A * X;
  const Eigen::MatrixXcd XA = X * A;
  report.penrose_residuals = {
      relative_residual(AX * A - A, A),
      relative_residual(XA * X - X, X),
      relative_residual(AX.adjoint() - AX, AX),
      relative_residual(XA.adjoint() - XA, XA),
  };
  return report;
}

Eigen::MatrixXcd projection_symbol(const MatrixSymbol& A, const Eigen::VectorXd& omega) {
  const Eigen::MatrixXcd a = A(omega);
  const PseudoinverseReport pinv = decell_pseudoinverse(a);
  return Eigen::MatrixXcd::Identity(A.size(), A.size()) - pinv.pinv * a;
}

MatrixSymbol projection_matrix_symbol(const MatrixSymbol& A) {
  return MatrixSymbol(
      A.size(), A.dimension(),
      [A](const Eigen::VectorXd& w) { return projection_symbol(A, w); },
      A.name() + ":projection");
}

std::vector<Eigen::VectorXd> sphere_directions(int d, int n, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("sphere_directions: d must be >= 2");
  if (n < 2) throw std::invalid_argument("sphere_directions: n must be >= 2");
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(n));
  if (d == 2) {
    for (int k = 0; k < n; ++k) {
      const double theta = 2.0 * M_PI * k / n;
      Eigen::VectorXd w(2);
      w << std::cos(theta), std::sin(theta);
      out.push_back(w);
    }
  } else if (d == 3) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / n;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * k;
      Eigen::VectorXd w(3);
      w << rho * std::cos(phi), rho * std::sin(phi), z;
      out.push_back(w);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd w(d);
      do {
        for (int i = 0; i < d; ++i) w[i] = gauss(rng);
      } while (w.norm() == 0.0);
      out.push_back(w / w.norm());
    }
  }
  return out;
}

ConditionsReport validate_conditions(const MatrixSymbol& A,
                                     const std::vector<Eigen::VectorXd>& directions,
                                     double sv_tolerance) {
  if (directions.size() < 2)
    throw std::invalid_argument("validate_conditions: need at least 2 directions");
  const int n = A.size();
  const int count = static_cast<int>(directions.size());

  ConditionsReport report;
  report.samples = count;
  report.sv_tolerance = sv_tolerance;

  std::vector<Eigen::MatrixXcd> values;
  values.reserve(directions.size());
  for (const auto& w : directions) values.push_back(A(w));

  // Continuity modulus over nearest-neighbor sample pairs (advisory).
  for (int i = 0; i < count; ++i) {
    int nearest = -1;
    double best = 2.1;
    for (int j = 0; j < count; ++j) {
      if (j == i) continue;
      const double dist = (directions[static_cast<std::size_t>(i)] -
                           directions[static_cast<std::size_t>(j)])
                              .norm();
      if (dist < best) {
        best = dist;
        nearest = j;
      }
    }
    if (nearest >= 0)
      report.continuity_modulus = std::max(
          report.continuity_modulus,
          (values[static_cast<std::size_t>(i)] - values[static_cast<std::size_t>(nearest)])
              .norm());
  }

  // Joint kernel: full column rank of the stacked evaluations.
  Eigen::MatrixXcd stacked(static_cast<Eigen::Index>(count) * n, n);
  for (int i = 0; i < count; ++i)
    stacked.block(static_cast<Eigen::Index>(i) * n, 0, n, n) =
        values[static_cast<std::size_t>(i)];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked);
  const Eigen::VectorXd sv = svd.singularValues();
  const double rank_cut = 1e-10 * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > rank_cut) ++rank;
  report.stacked_rank = rank;
  report.a2_trivial_joint_kernel = rank == n;

  // Degenerate set for the non-invertibility cap.
  for (int i = 0; i < count; ++i) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> point_svd(values[static_cast<std::size_t>(i)]);
    const double sigma_min = point_svd.singularValues().minCoeff();
    if (sigma_min < sv_tolerance) report.degenerate_samples.push_back(i);
  }

  // A cap needs a degenerate sample whose neighborhood is degenerate too:
  // consecutive indices for d = 2 (angle-ordered), 3 nearest samples above.
  const auto is_degenerate = [&](int i) {
    return std::find(report.degenerate_samples.begin(), report.degenerate_samples.end(),
                     i) != report.degenerate_samples.end();
  };
  if (A.dimension() == 2) {
    for (int i = 0; i < count && !report.a3_cap_found; ++i)
      if (is_degenerate(i) && is_degenerate((i + 1) % count)) {
        report.a3_cap_found = true;
        report.cap_center = directions[static_cast<std::size_t>(i)];
      }
  } else {
    for (int idx : report.degenerate_samples) {
      std::vector<std::pair<double, int>> dist;
      for (int j = 0; j < count; ++j)
        if (j != idx)
          dist.emplace_back((directions[static_cast<std::size_t>(idx)] -
                             directions[static_cast<std::size_t>(j)])
                                .norm(),
                            j);
      std::sort(dist.begin(), dist.end());
      const int k = std::min<int>(3, static_cast<int>(dist.size()));
      bool all = true;
      for (int j = 0; j < k; ++j) all = all && is_degenerate(dist[static_cast<std::size_t>(j)].second);
      if (all) {
        report.a3_cap_found = true;
        report.cap_center = directions[static_cast<std::size_t>(idx)];
        break;
      }
    }
  }
  return report;
}

MatrixWienerEstimate gamma_estimate(const MatrixSymbol& K, const Eigen::VectorXd& omega,
                                    double eps, const std::vector<double>& t_values,
                                    const AveragingOptions& opts) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("gamma_estimate: eps must be in (0, 1/2)");
  if (std::abs(omega.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("gamma_estimate: direction must be a unit vector");
  if (t_values.empty()) throw std::invalid_argument("gamma_estimate: no t values");
  const int n = K.size();
  const int d = K.dimension();

  MatrixWienerEstimate est;
  est.direction = omega;
  est.eps = eps;
  est.samples.resize(t_values.size());
  parallel_for(t_values.size(), opts.threads, [&](std::size_t i) {
    const double t = t_values[i];
    const double r = eps * t;
    const LatticeBall ball = enumerate_ball(t * omega, r, opts.max_points);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXd x(d);
    std::size_t used = 0;
    for (std::size_t p = 0; p < ball.count; ++p) {
      const auto chi = ball.point(p);
      bool origin = true;
      for (int c = 0; c < d; ++c) {
        x[c] = static_cast<double>(chi[c]);
        origin = origin && chi[c] == 0;
      }
      if (origin) continue;  // K(chi/|chi|) undefined there; measure-zero set
      sum += K(x);
      ++used;
    }
    if (used == 0)
      throw std::domain_error("gamma_estimate: ball contains no usable lattice point");
    est.samples[i] =
        MatrixBallSample{t, r, used, Eigen::MatrixXcd(sum / static_cast<double>(used))};
  });
  fit_matrix_limit(est, n);
  return est;
}

ObstructionReport obstruction_check(const MatrixSymbol& A,
                                    const std::vector<Eigen::VectorXd>& directions,
                                    const std::vector<double>& eps_values, double tol,
                                    const ObstructionOptions& opts) {
  if (directions.size() < 2)
    throw std::invalid_argument("obstruction_check: need at least 2 directions");
  if (eps_values.empty())
    throw std::invalid_argument("obstruction_check: need at least one eps");
  const int n = A.size();

  ObstructionReport report;
  report.directions = directions;
  report.eps_values = eps_values;
  report.tolerance = tol;
  report.note =
      "finite-sample surrogate: certifies infeasibility over the sampled "
      "directions only";

  const std::vector<Eigen::VectorXd> sphere =
      sphere_directions(A.dimension(), opts.sphere_samples);
  report.conditions = validate_conditions(A, sphere, opts.sv_tolerance);
  report.kernel_intersection_rank = report.conditions.stacked_rank;

  // Direction averages of the candidate projection symbol.
  const MatrixSymbol P = projection_matrix_symbol(A);
  AveragingOptions avg_opts;
  avg_opts.max_points = opts.max_points;
  avg_opts.threads = 1;
  report.gamma.assign(directions.size(), {});
  for (auto& row : report.gamma) row.resize(eps_values.size());
  parallel_for(directions.size() * eps_values.size(), opts.threads, [&](std::size_t k) {
    const std::size_t i = k / eps_values.size();
    const std::size_t j = k % eps_values.size();
    report.gamma[i][j] =
        gamma_estimate(P, directions[i], eps_values[j], opts.t_values, avg_opts);
  });

  for (std::size_t j = 0; j < eps_values.size(); ++j)
    for (std::size_t i = 0; i < directions.size(); ++i)
      for (std::size_t i2 = i + 1; i2 < directions.size(); ++i2)
        report.gamma_direction_spread = std::max(
            report.gamma_direction_spread,
            (report.gamma[i][j].limit - report.gamma[i2][j].limit).cwiseAbs().maxCoeff());
  for (std::size_t i = 0; i < directions.size(); ++i)
    for (std::size_t j = 0; j < eps_values.size(); ++j)
      for (std::size_t j2 = j + 1; j2 < eps_values.size(); ++j2)
        report.gamma_eps_spread = std::max(
            report.gamma_eps_spread,
            (report.gamma[i][j].limit - report.gamma[i][j2].limit).cwiseAbs().maxCoeff());
  report.gamma_direction_dependent = report.gamma_direction_spread > tol;

  if (!report.conditions.a3_cap_found) {
    report.verdict = ObstructionVerdict::cannot_conclude;
    report.violated_constraint =
        "no non-invertibility cap detected at this sample scale";
    return report;
  }

  // Hard block: Gamma constrained to the joint nullspace of the sampled
  // direction constraints A(omega_i) Gamma = 0 (columns of vec form I (x) A).
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  Eigen::MatrixXcd direction_block =
      Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(sphere.size()) * nn, nn);
  for (std::size_t i = 0; i < sphere.size(); ++i) {
    const Eigen::MatrixXcd a = A(sphere[i]);
    for (int col = 0; col < n; ++col)
      direction_block.block(static_cast<Eigen::Index>(i) * nn + col * n, col * n, n,
                            n) = a;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(direction_block, Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++rank;
  const Eigen::Index null_dim = nn - rank;
  const Eigen::MatrixXcd null_basis = svd.matrixV().rightCols(null_dim);

  // Cap block: Gamma Q(omega_j) = Q(omega_j), rows vec form Q^T (x) I.
  const auto& cap = report.conditions.degenerate_samples;
  Eigen::MatrixXcd cap_block(static_cast<Eigen::Index>(cap.size()) * nn, nn);
  Eigen::VectorXcd cap_rhs(static_cast<Eigen::Index>(cap.size()) * nn);
  for (std::size_t j = 0; j < cap.size(); ++j) {
    const Eigen::VectorXd& w = sphere[static_cast<std::size_t>(cap[j])];
    const Eigen::MatrixXcd a = A(w);
    const Eigen::MatrixXcd q =
        Eigen::MatrixXcd::Identity(n, n) - decell_pseudoinverse(a).pinv * a;
    const Eigen::MatrixXcd qt = q.transpose();
    for (int bc = 0; bc < n; ++bc)
      for (int br = 0; br < n; ++br)
        cap_block.block(static_cast<Eigen::Index>(j) * nn + bc * n, br * n, n, n) =
            qt(bc, br) * Eigen::MatrixXcd::Identity(n, n);
    for (int col = 0; col < n; ++col)
      cap_rhs.segment(static_cast<Eigen::Index>(j) * nn + col * n, n) = q.col(col);
  }

  const double rhs_norm = cap_rhs.norm();
  if (rhs_norm == 0.0) {
    // Q vanished on the whole cap: A+A = I there, so the cap was spurious.
    report.verdict = ObstructionVerdict::cannot_conclude;
    report.violated_constraint = "cap projections vanished; cap is spurious";
    return report;
  }
  if (null_dim == 0) {
    report.feasibility_residual = 1.0;  // forced Gamma = 0 against unit rhs
  } else {
    const Eigen::MatrixXcd reduced = cap_block * null_basis;
    const Eigen::VectorXcd y = reduced.colPivHouseholderQr().solve(cap_rhs);
    report.feasibility_residual = (reduced * y - cap_rhs).norm() / rhs_norm;
  }

  const bool infeasible = report.feasibility_residual > tol;
  if (infeasible || report.gamma_direction_dependent) {
    report.verdict = ObstructionVerdict::obstructed;
    report.violated_constraint =
        infeasible ? "joint system {A Gamma = 0 on the sphere} + {Gamma acts as "
                     "the identity on Ker A over the cap} is infeasible"
                   : "direction averages of the projection symbol depend on the "
                     "direction";
  } else {
    report.verdict = ObstructionVerdict::not_obstructed;
    report.violated_constraint = "";
  }
  return report;
}

}  // namespace specav
