#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include <l96x/errors.hpp>
#include <l96x/gmap.hpp>

namespace l96x {

/// A lattice system with per-site coefficients,
///
///   dx_i/dt = alpha_i * G(x)_i - beta_i * x_i + gamma_i(t),
///
/// covering the standard form (alpha = beta = 1, gamma = F), site-dependent
/// variants, and the inviscid advection-only case (beta = gamma = 0).
struct SystemSpec {
  int n = 0;
  GMap advection;
  Eigen::VectorXd alpha;  // advection scale per site
  Eigen::VectorXd beta;   // dissipation rate per site, >= 0
  Eigen::VectorXd gamma;  // constant forcing per site (ignored when forcing_t set)
  std::function<Eigen::VectorXd(double)> forcing_t;  // optional time-dependent forcing

  /// alpha = beta = 1, gamma = F at every site.
  static SystemSpec standard(const GMap& g, int n, double forcing);
  /// beta = gamma = 0: pure advection.
  static SystemSpec inviscid(const GMap& g, int n);

  Eigen::VectorXd forcing_at(double t) const;
  /// Throws DomainError on inconsistent sizes or negative dissipation.
  void validate() const;
};

struct SolverMeta {
  std::string solver;  // "rk4" or "dopri5"
  long steps = 0;      // accepted steps
  long rejected = 0;   // rejected trial steps (adaptive only)
  long rhs_evals = 0;
};

struct Trajectory {
  std::vector<double> times;  // strictly increasing
  Eigen::MatrixXd states;     // one row per time, n columns
  SolverMeta meta;

  int n_sites() const { return static_cast<int>(states.cols()); }
  Eigen::VectorXd state(std::size_t row) const { return states.row(static_cast<Eigen::Index>(row)).transpose(); }
  Eigen::VectorXd initial() const { return state(0); }
  Eigen::VectorXd last() const { return state(times.size() - 1); }
};

/// Right-hand side alpha .* G(x) - beta .* x + gamma(t).
/// Throws DomainError on non-finite state.
Eigen::VectorXd rhs(const SystemSpec& spec, double t, const Eigen::VectorXd& x);

/// Classical fixed-step RK4; output at every step. Throws BlowUpError when
/// the max-norm exceeds 1e12.
Trajectory integrate_rk4(const SystemSpec& spec, const Eigen::VectorXd& x0, double t0, double t1,
                         double dt);

/// Dormand-Prince 5(4) with PI step-size control and fourth-order dense
/// output. dt_out > 0 samples a uniform grid (t0, t0+dt_out, ..., t1);
/// dt_out == 0 records every accepted step. Throws BlowUpError past the
/// guard and DomainError on step-size underflow.
Trajectory integrate_adaptive(const SystemSpec& spec, const Eigen::VectorXd& x0, double t0,
                              double t1, double rtol = 1e-8, double atol = 1e-10,
                              double dt_out = 0.0);

/// The forcing constant of the rescaled standard form, alpha*gamma/beta^2.
double effective_forcing(double alpha, double beta, double gamma);

/// Maps a standard-form trajectory x(t) (computed with
/// F = alpha*gamma/beta^2) to the solution X(T) = (beta/alpha) x(beta T) of
/// the uniform-coefficient system dX/dT = alpha G(X) - beta X + gamma:
/// times divide by beta, states scale by beta/alpha. Throws DomainError
/// when beta <= 0.
Trajectory rescale(const Trajectory& traj, double alpha, double beta, double gamma);

/// A named scalar function of the state, with an applicability predicate
/// (e.g. parity energies need even n).
struct Quantity {
  std::string name;
  std::string requirement;  // human-readable applicability condition
  std::function<bool(int)> applicable;
  std::function<double(const Eigen::VectorXd&)> eval;
};

struct InvariantSet {
  std::vector<Quantity> quantities;
};

Quantity total_sum();
Quantity total_energy();
/// Energy at even (parity = 0) or odd (parity = 1) sites; needs even n.
Quantity parity_energy(int parity);
/// Sum over sites congruent to k mod 3; needs 3 | n.
Quantity stride3_sum(int k);
/// x_first^2 + x_{first+2}^2 for n = 4 (first = 0 or 1).
Quantity pair_energy(int first);
/// Hamiltonian of the polar reduction for n = 4.
Quantity n4_hamiltonian();

/// Everything above that applies at this n (quantities that do not apply are
/// included and flagged by audit instead of silently dropped).
InvariantSet symmetric_invariants(int n);
/// Total energy only (the conserved quantity of every energy-preserving map).
InvariantSet energy_invariant();

struct DriftEntry {
  std::string name;
  bool applicable = true;
  std::string note;       // requirement text when not applicable
  double initial = 0.0;
  double max_drift = 0.0;  // max |Q(x(t)) - Q(x(0))| / max(1, |Q(x(0))|)
};

struct DriftReport {
  std::vector<DriftEntry> entries;
  /// Largest drift among applicable quantities.
  double max_drift() const;
};

DriftReport audit(const Trajectory& traj, const InvariantSet& inv);

/// Mean relative loss of a quantity in percent per unit time over the
/// trajectory: 100 * (1 - Q(end)/Q(start)) / elapsed.
double loss_rate_percent(const Trajectory& traj, const Quantity& q);

/// The same rate restricted to the second half of the time window. Smooth
/// initial data pass through a violent adjustment phase whose solver error
/// dwarfs the statistically steady loss; this discards that transient.
double steady_loss_rate_percent(const Trajectory& traj, const Quantity& q);

/// Polar reduction of the inviscid symmetric system (G = G3 - ~G3) on four
/// sites: x0 + i x2 = rho0 exp(i alpha0), x1 + i x3 = rho1 exp(i alpha1).
/// The radii are conserved and the angles obey
///   alpha0' = -rho1 sqrt(2) cos(alpha1 + pi/4),
///   alpha1' =  rho0 sqrt(2) cos(alpha0 + pi/4),
/// a Hamiltonian system with
///   H = sqrt(2) (rho0 sin(alpha0 + pi/4) + rho1 sin(alpha1 + pi/4)).
struct PolarReduction {
  double rho0 = 0.0;
  double rho1 = 0.0;
  double alpha0 = 0.0;  // initial angles; 0 when the radius vanishes
  double alpha1 = 0.0;
  bool degenerate = false;  // rho0 == 0 or rho1 == 0 (angle undefined)
  double hamiltonian = 0.0;
};

PolarReduction reduce_n4(const Eigen::VectorXd& x0);

/// Integrates the angular system and reconstructs the lattice state
/// (rho0 cos a0, rho1 cos a1, rho0 sin a0, rho1 sin a1) on a uniform grid.
Trajectory reconstruct_n4(const PolarReduction& r, double t0, double t1, double dt_out);

/// Decomposition of the inviscid symmetric system on six sites,
/// x_j = c_{j mod 3} + (-1)^j y_{j mod 3} / 2: c is constant and y obeys
/// the linear cross-product system y' = 2 (c x y), so y(t) is a rotation of
/// y(0) about the axis c with angular speed 2|c|.
struct CrossProductReduction {
  Eigen::Vector3d c;
  Eigen::Vector3d y0;
};

CrossProductReduction reduce_n6(const Eigen::VectorXd& x0);

/// Closed-form state at time t (Rodrigues rotation; c = 0 gives a constant).
Eigen::VectorXd n6_state(const CrossProductReduction& r, double t);

}  // namespace l96x
