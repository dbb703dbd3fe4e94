#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include <l96x/errors.hpp>
#include <l96x/gmap.hpp>

namespace l96x {

/// The stationary problem 0 = G(x) - B x + F with positive diagonal B.
struct StationaryProblem {
  int n = 0;
  GMap advection;
  Eigen::VectorXd b;  // diagonal of B, all entries > 0
  Eigen::VectorXd f;  // forcing

  /// B = I, F = forcing * e.
  static StationaryProblem homogeneous(const GMap& g, int n, double forcing);

  void validate() const;
  Eigen::VectorXd residual(const Eigen::VectorXd& x) const;
  /// Analytic Jacobian of the residual: linearize_at(g, x) - diag(b).
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;
};

struct NewtonResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double residual_norm = 0.0;
  /// Residual norms before each iteration and after the last one, so
  /// residual_history.front() is the starting residual.
  std::vector<double> residual_history;
};

/// Damped-free Newton iteration with the analytic Jacobian. Throws
/// DomainError naming the failure (singular Jacobian, iteration budget,
/// divergence) together with the last residual norm.
NewtonResult newton(const StationaryProblem& prob, const Eigen::VectorXd& x_init,
                    double tol = 1e-12, int max_iter = 50);

/// The a-priori radius ||B^{-1/2} F||: every solution of the stationary
/// problem satisfies ||B^{1/2} x|| <= this.
double apriori_bound(const StationaryProblem& prob);

/// Checks the bound with slack for a residual-tol root.
bool satisfies_apriori(const StationaryProblem& prob, const Eigen::VectorXd& x,
                       double slack = 1e-8);

struct PathPoint {
  double t = 0.0;
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  int newton_iterations = 0;
};

struct ContinuationPath {
  std::vector<PathPoint> points;
  bool complete = false;  // reached t = 1
  std::string note;       // failure position when partial
  const Eigen::VectorXd& solution() const;
};

/// Continuation of Phi(t, z) = G(z) - B z + t F from the unique solution
/// x = 0 at t = 0 to t = 1 on a uniform grid of the given step count, with
/// step halving on Newton failure down to a floor of 1e-6. Every accepted
/// point has residual <= newton_tol and satisfies the a-priori bound for
/// the scaled forcing t F; a point that fails the bound counts as a Newton
/// failure. A partial path (complete = false) is returned when the floor
/// is reached.
ContinuationPath homotopy_solve(const StationaryProblem& prob, int steps,
                                double newton_tol = 1e-12);

struct StabilityReport {
  double spectral_abscissa = 0.0;  // max real part of the Jacobian spectrum
  bool stable = false;             // spectral_abscissa < 0
  bool indeterminate = false;      // |spectral_abscissa| < 1e-8
  int unstable_count = 0;          // eigenvalues with positive real part
};

/// Dense eigenvalue assessment of the equilibrium x_star.
StabilityReport local_stability(const StationaryProblem& prob, const Eigen::VectorXd& x_star);

}  // namespace l96x
