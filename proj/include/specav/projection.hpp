#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "specav/lattice.hpp"
#include "specav/wiener.hpp"

namespace specav {

// A 0-homogeneous N x N matrix function of direction. Inputs are normalized
// before evaluation, so homogeneity is structural rather than sampled.
// On the lattice the symbol reads K(chi / |chi|); the origin is excluded
// from averages.
class MatrixSymbol {
 public:
  MatrixSymbol(int size, int d,
               std::function<Eigen::MatrixXcd(const Eigen::VectorXd&)> eval,
               std::string name = "custom");

  Eigen::MatrixXcd operator()(const Eigen::VectorXd& direction) const;
  int size() const { return size_; }
  int dimension() const { return d_; }
  const std::string& name() const { return name_; }

 private:
  int size_;
  int d_;
  std::function<Eigen::MatrixXcd(const Eigen::VectorXd&)> eval_;
  std::string name_;
};

// Built-ins: curl2, curl3_completed, gradient_d (d in {2,3}), diag_omega1,
// identity. `d` is only consulted by the names that need it.
MatrixSymbol builtin_matrix_symbol(const std::string& name, int d = 2);
std::vector<std::string> builtin_matrix_symbol_names();

// Characteristic-polynomial route to the Moore-Penrose pseudoinverse:
//   det(AA* - xI) = (-1)^N sum_j c_j x^{N-j},  c_0 = 1,
//   s = largest j with c_j != 0 (relative threshold),
//   A+ = -(1/c_s) A* sum_{j=0}^{s-1} c_j (AA*)^{(s-1)-j}.
// Total on every finite input; A = 0 yields A+ = 0. The input is normalized
// by its Frobenius norm before the trace recursion and the result rescaled,
// which keeps the recursion conditioned; reported coefficients refer to the
// unscaled AA*.
struct PseudoinverseReport {
  Eigen::VectorXd charpoly;                 // c_0 .. c_N of det(AA* - xI)
  int s = 0;                                // largest index with c_s above threshold
  Eigen::MatrixXcd pinv;
  std::array<double, 4> penrose_residuals;  // relative, in the Penrose order
  bool near_threshold = false;              // |c_s| within 10x of the cutoff
};

PseudoinverseReport decell_pseudoinverse(const Eigen::MatrixXcd& A,
                                         double zero_tol = 1e-9);

// P(omega) = I - A+(omega) A(omega): the orthogonal projection onto
// Ker A(omega).
Eigen::MatrixXcd projection_symbol(const MatrixSymbol& A,
                                   const Eigen::VectorXd& omega);
MatrixSymbol projection_matrix_symbol(const MatrixSymbol& A);

// Quasi-uniform unit directions: equal angles for d = 2, a Fibonacci
// spiral for d = 3, seeded Gaussian normalization above.
std::vector<Eigen::VectorXd> sphere_directions(int d, int n,
                                               std::uint64_t seed = 12345);

// Finite-sample check of the three structural conditions: continuity
// modulus over nearest sample pairs (advisory), trivial joint kernel via
// the rank of the stacked evaluations, and a non-invertibility cap via the
// smallest singular value against sv_tolerance.
struct ConditionsReport {
  int samples = 0;
  double sv_tolerance = 0.0;
  double continuity_modulus = 0.0;      // max |A(w) - A(w')| over neighbor pairs
  int stacked_rank = 0;
  bool a2_trivial_joint_kernel = false;
  std::vector<int> degenerate_samples;  // indices with sigma_min < sv_tolerance
  bool a3_cap_found = false;
  Eigen::VectorXd cap_center;
};

ConditionsReport validate_conditions(const MatrixSymbol& A,
                                     const std::vector<Eigen::VectorXd>& directions,
                                     double sv_tolerance = 0.05);

// Entrywise ball averages of K(chi/|chi|) along t -> t*omega with radius
// eps * t, extrapolated entrywise by the L + C/r model.
struct MatrixBallSample {
  double t = 0.0;
  double r = 0.0;
  std::size_t count = 0;
  Eigen::MatrixXcd average;
};

struct MatrixWienerEstimate {
  Eigen::VectorXd direction;
  double eps = 0.0;
  std::vector<MatrixBallSample> samples;
  Eigen::MatrixXcd limit;
  double fit_residual = 0.0;
  bool degenerate_fit = false;
};

MatrixWienerEstimate gamma_estimate(const MatrixSymbol& K, const Eigen::VectorXd& omega,
                                    double eps, const std::vector<double>& t_values,
                                    const AveragingOptions& opts = {});

enum class ObstructionVerdict { obstructed, not_obstructed, cannot_conclude };

struct ObstructionOptions {
  int sphere_samples = 360;
  double sv_tolerance = 0.05;
  std::vector<double> t_values = {1e3, 3162.2776601683795, 1e4};
  std::size_t max_points = 100'000'000;
  int threads = 1;
};

// The algebraic contradiction at finite sample scale. Direction averages of
// the candidate projection symbol are estimated per direction and epsilon;
// then a constant Gamma is fit by least squares to the joint constraints
//   A(omega_i) Gamma = 0            over all sampled directions (hard block:
//                                   Gamma restricted to the nullspace), and
//   Gamma Q(omega_j) = Q(omega_j)   over the degenerate cap, Q = I - A+A.
// The relative residual of the second block within the nullspace of the
// first is the infeasibility measure; a trivial nullspace scores exactly 1.
struct ObstructionReport {
  ConditionsReport conditions;
  std::vector<Eigen::VectorXd> directions;
  std::vector<double> eps_values;
  std::vector<std::vector<MatrixWienerEstimate>> gamma;  // [direction][eps]
  double gamma_direction_spread = 0.0;  // max entrywise deviation across directions
  double gamma_eps_spread = 0.0;        // spread across the eps family
  bool gamma_direction_dependent = false;
  int kernel_intersection_rank = 0;
  double feasibility_residual = 0.0;
  double tolerance = 0.0;
  ObstructionVerdict verdict = ObstructionVerdict::cannot_conclude;
  std::string violated_constraint;  // which joint identity failed
  std::string note;                 // finite-sample disclaimer, fixed text
};

ObstructionReport obstruction_check(const MatrixSymbol& A,
                                    const std::vector<Eigen::VectorXd>& directions,
                                    const std::vector<double>& eps_values, double tol,
                                    const ObstructionOptions& opts = {});

}  // namespace specav
