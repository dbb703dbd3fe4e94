#include <l96x/equilibria.hpp>

#include <algorithm>
#include <cmath>

namespace l96x {
namespace {

constexpr double kStepFloor = 1e-6;
constexpr double kBorderline = 1e-8;

std::string with_residual(const std::string& what, double residual) {
  return what + " (residual " + std::to_string(residual) + ")";
}

}  // namespace

StationaryProblem StationaryProblem::homogeneous(const GMap& g, int n, double forcing) {
  StationaryProblem prob;
  prob.n = n;
  prob.advection = g;
  prob.b = Eigen::VectorXd::Ones(n);
  prob.f = Eigen::VectorXd::Constant(n, forcing);
  return prob;
}

void StationaryProblem::validate() const {
  if (n < 1) throw DomainError("stationary problem needs at least one site");
  if (b.size() != n || f.size() != n)
    throw DomainError("coefficient vectors must have length n = " + std::to_string(n));
  if ((b.array() <= 0.0).any()) throw DomainError("dissipation diagonal must be positive");
}

Eigen::VectorXd StationaryProblem::residual(const Eigen::VectorXd& x) const {
  return evaluate(advection, x) - b.cwiseProduct(x) + f;
}

Eigen::MatrixXd StationaryProblem::jacobian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd j = linearize_at(advection, x);
  j.diagonal() -= b;
  return j;
}

NewtonResult newton(const StationaryProblem& prob, const Eigen::VectorXd& x_init, double tol,
                    int max_iter) {
  prob.validate();
  if (!(tol > 0.0)) throw DomainError("newton: tolerance must be positive");
  if (x_init.size() != prob.n) throw DomainError("newton: starting state has wrong length");

  NewtonResult result;
  result.x = x_init;
  Eigen::VectorXd r = prob.residual(result.x);
  result.residual_norm = r.norm();
  result.residual_history.push_back(result.residual_norm);

  for (int it = 0; it < max_iter; ++it) {
    if (result.residual_norm <= tol) return result;
    if (!std::isfinite(result.residual_norm) || result.residual_norm > 1e12)
      throw DomainError(with_residual("newton: iteration diverged", result.residual_norm));
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(prob.jacobian(result.x));
    if (!lu.isInvertible())
      throw DomainError(with_residual("newton: singular Jacobian at iteration " +
                                          std::to_string(it),
                                      result.residual_norm));
    result.x -= lu.solve(r);
    r = prob.residual(result.x);
    result.residual_norm = r.norm();
    result.residual_history.push_back(result.residual_norm);
    result.iterations = it + 1;
  }
  if (result.residual_norm <= tol) return result;
  throw DomainError(with_residual(
      "newton: no convergence within " + std::to_string(max_iter) + " iterations",
      result.residual_norm));
}

double apriori_bound(const StationaryProblem& prob) {
  prob.validate();
  return (prob.f.array() / prob.b.array().sqrt()).matrix().norm();
}

bool satisfies_apriori(const StationaryProblem& prob, const Eigen::VectorXd& x, double slack) {
  const double lhs = (prob.b.array().sqrt() * x.array()).matrix().norm();
  const double bound = apriori_bound(prob);
  return lhs <= bound + slack * std::max(1.0, bound);
}

const Eigen::VectorXd& ContinuationPath::solution() const {
  if (points.empty()) throw DomainError("empty continuation path");
  return points.back().x;
}

ContinuationPath homotopy_solve(const StationaryProblem& prob, int steps, double newton_tol) {
  prob.validate();
  if (steps < 1) throw DomainError("homotopy needs at least one step");

  const double base_step = 1.0 / steps;
  ContinuationPath path;
  path.points.push_back({0.0, Eigen::VectorXd::Zero(prob.n), 0.0, 0});

  double t = 0.0;
  double step = base_step;
  StationaryProblem scaled = prob;
  while (t < 1.0) {
    // Snap to the endpoint so accumulated roundoff cannot leave a stray
    // near-duplicate grid point just below t = 1.
    const double target = (t + step >= 1.0 - 1e-12) ? 1.0 : t + step;
    scaled.f = target * prob.f;
    bool accepted = false;
    try {
      const NewtonResult res = newton(scaled, path.points.back().x, newton_tol, 50);
      if (satisfies_apriori(scaled, res.x)) {
        path.points.push_back({target, res.x, res.residual_norm, res.iterations});
        accepted = true;
      }
    } catch (const DomainError&) {
    }
    if (accepted) {
      t = target;
      step = std::min(2.0 * step, base_step);
    } else {
      step *= 0.5;
      if (step < kStepFloor) {
        path.complete = false;
        path.note = "step floor reached at t = " + std::to_string(t);
        return path;
      }
    }
  }
  path.complete = true;
  return path;
}

StabilityReport local_stability(const StationaryProblem& prob, const Eigen::VectorXd& x_star) {
  prob.validate();
  if (x_star.size() != prob.n) throw DomainError("stability: state has wrong length");
  const Eigen::EigenSolver<Eigen::MatrixXd> eigs(prob.jacobian(x_star));
  StabilityReport report;
  report.spectral_abscissa = eigs.eigenvalues().real().maxCoeff();
  for (Eigen::Index i = 0; i < eigs.eigenvalues().size(); ++i)
    if (eigs.eigenvalues()[i].real() > 0.0) ++report.unstable_count;
  report.stable = report.spectral_abscissa < 0.0;
  report.indeterminate = std::abs(report.spectral_abscissa) < kBorderline;
  return report;
}

}  // namespace l96x
