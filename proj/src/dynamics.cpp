#include <l96x/dynamics.hpp>

#include <algorithm>
#include <cmath>
#include <utility>

namespace l96x {
namespace {

constexpr double kBlowUpGuard = 1e12;
constexpr double kUround = 2.3e-16;
constexpr long kMaxSteps = 50'000'000;

using RhsFn = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

void guard_state(double t, const Eigen::VectorXd& x) {
  const double norm = x.cwiseAbs().maxCoeff();
  if (!std::isfinite(norm) || norm > kBlowUpGuard) throw BlowUpError(t, norm);
}

Trajectory collect(std::vector<double> times, std::vector<Eigen::VectorXd> rows, SolverMeta meta) {
  Trajectory traj;
  traj.times = std::move(times);
  traj.states.resize(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    traj.states.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  traj.meta = std::move(meta);
  return traj;
}

Trajectory rk4_core(const RhsFn& f, Eigen::VectorXd y, double t0, double t1, double dt) {
  if (!(dt > 0.0)) throw DomainError("rk4: step size must be positive");
  if (!(t1 > t0)) throw DomainError("rk4: need t1 > t0");
  guard_state(t0, y);
  std::vector<double> times{t0};
  std::vector<Eigen::VectorXd> rows{y};
  SolverMeta meta{"rk4", 0, 0, 0};
  const long n_full = static_cast<long>(std::floor((t1 - t0) / dt * (1.0 + 1e-12)));
  double t = t0;
  auto step = [&](double h) {
    const Eigen::VectorXd k1 = f(t, y);
    const Eigen::VectorXd k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = f(t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    meta.rhs_evals += 4;
    ++meta.steps;
  };
  for (long i = 1; i <= n_full; ++i) {
    step(dt);
    t = t0 + static_cast<double>(i) * dt;
    guard_state(t, y);
    times.push_back(t);
    rows.push_back(y);
  }
  if (t1 - t > 1e-12 * dt) {
    step(t1 - t);
    t = t1;
    guard_state(t, y);
    times.push_back(t);
    rows.push_back(y);
  }
  return collect(std::move(times), std::move(rows), std::move(meta));
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights (fourth-order interpolant).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

double initial_step(const RhsFn& f, double t0, const Eigen::VectorXd& y0,
                    const Eigen::VectorXd& f0, double hmax, double rtol, double atol,
                    long& rhs_evals) {
  double dnf = 0.0, dny = 0.0;
  const Eigen::Index n = y0.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sk = atol + rtol * std::abs(y0[i]);
    dnf += (f0[i] / sk) * (f0[i] / sk);
    dny += (y0[i] / sk) * (y0[i] / sk);
  }
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
  h = std::min(h, hmax);
  const Eigen::VectorXd f1 = f(t0 + h, y0 + h * f0);
  ++rhs_evals;
  double der2 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sk = atol + rtol * std::abs(y0[i]);
    der2 += ((f1[i] - f0[i]) / sk) * ((f1[i] - f0[i]) / sk);
  }
  der2 = std::sqrt(der2) / h;
  const double der12 = std::max(der2, std::sqrt(dnf));
  const double h1 = (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
  return std::min({100.0 * h, h1, hmax});
}

Trajectory dopri5_core(const RhsFn& f, Eigen::VectorXd y, double t0, double t1, double rtol,
                       double atol, double dt_out) {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw DomainError("dopri5: tolerances must be positive");
  if (!(t1 > t0)) throw DomainError("dopri5: need t1 > t0");
  if (dt_out < 0.0) throw DomainError("dopri5: output interval must be >= 0");
  guard_state(t0, y);

  // PI step-size controller constants.
  const double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
  const double facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0;
  double facold = 1e-4;

  std::vector<double> times{t0};
  std::vector<Eigen::VectorXd> rows{y};
  SolverMeta meta{"dopri5", 0, 0, 0};

  const long n_grid = dt_out > 0.0
                          ? static_cast<long>(std::floor((t1 - t0) / dt_out * (1.0 + 1e-12)))
                          : 0;
  long next_grid = 1;  // grid index 0 is the initial row

  double t = t0;
  Eigen::VectorXd k1 = f(t, y);
  ++meta.rhs_evals;
  double h = initial_step(f, t, y, k1, t1 - t0, rtol, atol, meta.rhs_evals);
  bool rejected = false;

  while (t < t1) {
    if (meta.steps + meta.rejected > kMaxSteps)
      throw DomainError("dopri5: step limit exceeded");
    if (0.1 * h <= std::abs(t) * kUround)
      throw DomainError("dopri5: step size underflow at t = " + std::to_string(t));
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }

    const Eigen::VectorXd k2 = f(t + c2 * h, y + h * (a21 * k1));
    const Eigen::VectorXd k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 =
        f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 =
        f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXd ynew =
        y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const Eigen::VectorXd k7 = f(t + h, ynew);
    meta.rhs_evals += 6;

    double err = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sk = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (e / sk) * (e / sk);
    }
    err = std::sqrt(err / static_cast<double>(y.size()));

    const double fac11 = std::pow(err, expo1);
    double fac = fac11 / std::pow(facold, beta);
    fac = std::max(facc2, std::min(facc1, fac / safe));
    double hnew = h / fac;

    if (err <= 1.0) {
      facold = std::max(err, 1e-4);
      guard_state(t + h, ynew);
      if (dt_out > 0.0) {
        // Fourth-order interpolant over the accepted step.
        const Eigen::VectorXd ydiff = ynew - y;
        const Eigen::VectorXd bspl = h * k1 - ydiff;
        const Eigen::VectorXd cont4 = ydiff - h * k7 - bspl;
        const Eigen::VectorXd cont5 =
            h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        while (next_grid <= n_grid) {
          const double s = t0 + static_cast<double>(next_grid) * dt_out;
          if (s > t + h + 1e-12 * std::max(1.0, std::abs(t + h))) break;
          const double th = (s - t) / h;
          times.push_back(s);
          rows.push_back(y + th * (ydiff + (1.0 - th) * (bspl + th * (cont4 + (1.0 - th) * cont5))));
          ++next_grid;
        }
      } else {
        times.push_back(t + h);
        rows.push_back(ynew);
      }
      k1 = k7;
      y = ynew;
      t += h;
      ++meta.steps;
      if (rejected) hnew = std::min(std::abs(hnew), std::abs(h));
      rejected = false;
      if (last && t < t1) t = t1;  // defensive; h was clipped exactly
    } else {
      hnew = h / std::min(facc1, fac11 / safe);
      rejected = true;
      ++meta.rejected;
    }
    h = hnew;
  }

  // The output always ends exactly at t1: emit it when the grid missed it
  // (non-divisible dt_out, or roundoff on the final grid point).
  if (t1 - times.back() > 1e-9 * std::max(1.0, std::abs(t1))) {
    times.push_back(t1);
    rows.push_back(y);
  }
  return collect(std::move(times), std::move(rows), std::move(meta));
}

}  // namespace

SystemSpec SystemSpec::standard(const GMap& g, int n, double forcing) {
  SystemSpec spec;
  spec.n = n;
  spec.advection = g;
  spec.alpha = Eigen::VectorXd::Ones(n);
  spec.beta = Eigen::VectorXd::Ones(n);
  spec.gamma = Eigen::VectorXd::Constant(n, forcing);
  return spec;
}

SystemSpec SystemSpec::inviscid(const GMap& g, int n) {
  SystemSpec spec;
  spec.n = n;
  spec.advection = g;
  spec.alpha = Eigen::VectorXd::Ones(n);
  spec.beta = Eigen::VectorXd::Zero(n);
  spec.gamma = Eigen::VectorXd::Zero(n);
  return spec;
}

Eigen::VectorXd SystemSpec::forcing_at(double t) const {
  if (forcing_t) {
    Eigen::VectorXd g = forcing_t(t);
    if (g.size() != n) throw DomainError("time-dependent forcing returned wrong length");
    return g;
  }
  return gamma;
}

void SystemSpec::validate() const {
  if (n < 1) throw DomainError("system needs at least one site");
  if (alpha.size() != n || beta.size() != n || (!forcing_t && gamma.size() != n))
    throw DomainError("coefficient sequences must have length n = " + std::to_string(n));
  if ((beta.array() < 0.0).any()) throw DomainError("dissipation rates must be >= 0");
}

Eigen::VectorXd rhs(const SystemSpec& spec, double t, const Eigen::VectorXd& x) {
  if (x.size() != spec.n) throw DomainError("state length does not match system size");
  if (!x.allFinite()) throw DomainError("non-finite state");
  return spec.alpha.cwiseProduct(evaluate(spec.advection, x)) - spec.beta.cwiseProduct(x) +
         spec.forcing_at(t);
}

Trajectory integrate_rk4(const SystemSpec& spec, const Eigen::VectorXd& x0, double t0, double t1,
                         double dt) {
  spec.validate();
  if (x0.size() != spec.n) throw DomainError("initial state length does not match system size");
  return rk4_core([&spec](double t, const Eigen::VectorXd& x) { return rhs(spec, t, x); }, x0, t0,
                  t1, dt);
}

Trajectory integrate_adaptive(const SystemSpec& spec, const Eigen::VectorXd& x0, double t0,
                              double t1, double rtol, double atol, double dt_out) {
  spec.validate();
  if (x0.size() != spec.n) throw DomainError("initial state length does not match system size");
  return dopri5_core([&spec](double t, const Eigen::VectorXd& x) { return rhs(spec, t, x); }, x0,
                     t0, t1, rtol, atol, dt_out);
}

double effective_forcing(double alpha, double beta, double gamma) {
  if (!(beta > 0.0)) throw DomainError("rescale needs beta > 0");
  return alpha * gamma / (beta * beta);
}

Trajectory rescale(const Trajectory& traj, double alpha, double beta, double gamma) {
  if (!(beta > 0.0)) throw DomainError("rescale needs beta > 0");
  if (alpha == 0.0) throw DomainError("rescale needs alpha != 0");
  (void)gamma;  // fixes F = alpha*gamma/beta^2 of the source trajectory; not used in the map
  Trajectory out;
  out.times.reserve(traj.times.size());
  for (double t : traj.times) out.times.push_back(t / beta);
  out.states = (beta / alpha) * traj.states;
  out.meta = traj.meta;
  return out;
}

Quantity total_sum() {
  return {"total sum", "", [](int) { return true; },
          [](const Eigen::VectorXd& x) { return x.sum(); }};
}

Quantity total_energy() {
  return {"total energy", "", [](int) { return true; },
          [](const Eigen::VectorXd& x) { return x.squaredNorm(); }};
}

Quantity parity_energy(int parity) {
  if (parity != 0 && parity != 1) throw DomainError("parity must be 0 or 1");
  const std::string name = parity == 0 ? "even-site energy" : "odd-site energy";
  return {name, "n even", [](int n) { return n % 2 == 0; },
          [parity](const Eigen::VectorXd& x) {
            double e = 0.0;
            for (Eigen::Index i = parity; i < x.size(); i += 2) e += x[i] * x[i];
            return e;
          }};
}

Quantity stride3_sum(int k) {
  if (k < 0 || k > 2) throw DomainError("stride-3 class must be 0, 1, or 2");
  return {"stride-3 sum (offset " + std::to_string(k) + ")", "n divisible by 3",
          [](int n) { return n % 3 == 0; },
          [k](const Eigen::VectorXd& x) {
            double s = 0.0;
            for (Eigen::Index i = k; i < x.size(); i += 3) s += x[i];
            return s;
          }};
}

Quantity pair_energy(int first) {
  if (first != 0 && first != 1) throw DomainError("pair must start at site 0 or 1");
  return {"rho" + std::to_string(first) + "^2", "n = 4", [](int n) { return n == 4; },
          [first](const Eigen::VectorXd& x) {
            return x[first] * x[first] + x[first + 2] * x[first + 2];
          }};
}

Quantity n4_hamiltonian() {
  return {"polar Hamiltonian", "n = 4", [](int n) { return n == 4; },
          [](const Eigen::VectorXd& x) {
            const PolarReduction r = reduce_n4(x);
            return r.hamiltonian;
          }};
}

InvariantSet symmetric_invariants(int n) {
  InvariantSet inv;
  inv.quantities.push_back(total_sum());
  inv.quantities.push_back(total_energy());
  inv.quantities.push_back(parity_energy(0));
  inv.quantities.push_back(parity_energy(1));
  for (int k = 0; k < 3; ++k) inv.quantities.push_back(stride3_sum(k));
  if (n == 4) {
    inv.quantities.push_back(pair_energy(0));
    inv.quantities.push_back(pair_energy(1));
    inv.quantities.push_back(n4_hamiltonian());
  }
  return inv;
}

InvariantSet energy_invariant() { return {{total_energy()}}; }

double DriftReport::max_drift() const {
  double m = 0.0;
  for (const DriftEntry& e : entries)
    if (e.applicable) m = std::max(m, e.max_drift);
  return m;
}

DriftReport audit(const Trajectory& traj, const InvariantSet& inv) {
  if (traj.times.empty()) throw DomainError("audit needs a non-empty trajectory");
  const int n = traj.n_sites();
  DriftReport report;
  for (const Quantity& q : inv.quantities) {
    DriftEntry entry;
    entry.name = q.name;
    if (!q.applicable(n)) {
      entry.applicable = false;
      entry.note = "not applicable: needs " + q.requirement;
      report.entries.push_back(std::move(entry));
      continue;
    }
    const double q0 = q.eval(traj.initial());
    entry.initial = q0;
    const double scale = std::max(1.0, std::abs(q0));
    for (std::size_t row = 1; row < traj.times.size(); ++row)
      entry.max_drift = std::max(entry.max_drift, std::abs(q.eval(traj.state(row)) - q0) / scale);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

double loss_rate_percent(const Trajectory& traj, const Quantity& q) {
  if (traj.times.size() < 2) throw DomainError("loss rate needs at least two samples");
  const double elapsed = traj.times.back() - traj.times.front();
  const double q0 = q.eval(traj.initial());
  if (q0 == 0.0) throw DomainError("loss rate undefined for zero initial value");
  return 100.0 * (1.0 - q.eval(traj.last()) / q0) / elapsed;
}

double steady_loss_rate_percent(const Trajectory& traj, const Quantity& q) {
  if (traj.times.size() < 2) throw DomainError("loss rate needs at least two samples");
  const double mid_time = 0.5 * (traj.times.front() + traj.times.back());
  std::size_t mid = 0;
  while (mid < traj.times.size() && traj.times[mid] < mid_time) ++mid;
  if (mid + 1 >= traj.times.size())
    throw DomainError("loss rate needs at least two samples past the transient");
  const double elapsed = traj.times.back() - traj.times[mid];
  const double qm = q.eval(traj.state(mid));
  if (qm == 0.0) throw DomainError("loss rate undefined for zero value at the window start");
  return 100.0 * (1.0 - q.eval(traj.last()) / qm) / elapsed;
}

PolarReduction reduce_n4(const Eigen::VectorXd& x0) {
  if (x0.size() != 4) throw DomainError("polar reduction is defined for n = 4");
  PolarReduction r;
  r.rho0 = std::hypot(x0[0], x0[2]);
  r.rho1 = std::hypot(x0[1], x0[3]);
  r.degenerate = r.rho0 == 0.0 || r.rho1 == 0.0;
  r.alpha0 = r.rho0 == 0.0 ? 0.0 : std::atan2(x0[2], x0[0]);
  r.alpha1 = r.rho1 == 0.0 ? 0.0 : std::atan2(x0[3], x0[1]);
  const double quarter = std::atan(1.0);  // pi/4
  r.hamiltonian = std::sqrt(2.0) * (r.rho0 * std::sin(r.alpha0 + quarter) +
                                    r.rho1 * std::sin(r.alpha1 + quarter));
  return r;
}

Trajectory reconstruct_n4(const PolarReduction& r, double t0, double t1, double dt_out) {
  if (!(dt_out > 0.0)) throw DomainError("reconstruction needs a positive output interval");
  const double quarter = std::atan(1.0);
  const double s2 = std::sqrt(2.0);
  auto angular = [&r, quarter, s2](double, const Eigen::VectorXd& a) {
    Eigen::VectorXd da(2);
    da[0] = -r.rho1 * s2 * std::cos(a[1] + quarter);
    da[1] = r.rho0 * s2 * std::cos(a[0] + quarter);
    return da;
  };
  Eigen::VectorXd a0(2);
  a0 << r.alpha0, r.alpha1;
  const Trajectory angles = dopri5_core(angular, a0, t0, t1, 1e-12, 1e-14, dt_out);
  Trajectory out;
  out.times = angles.times;
  out.meta = angles.meta;
  out.states.resize(angles.states.rows(), 4);
  for (Eigen::Index i = 0; i < angles.states.rows(); ++i) {
    const double al0 = angles.states(i, 0), al1 = angles.states(i, 1);
    out.states(i, 0) = r.rho0 * std::cos(al0);
    out.states(i, 1) = r.rho1 * std::cos(al1);
    out.states(i, 2) = r.rho0 * std::sin(al0);
    out.states(i, 3) = r.rho1 * std::sin(al1);
  }
  return out;
}

CrossProductReduction reduce_n6(const Eigen::VectorXd& x0) {
  if (x0.size() != 6) throw DomainError("cross-product reduction is defined for n = 6");
  CrossProductReduction r;
  for (int m = 0; m < 3; ++m) {
    r.c[m] = 0.5 * (x0[m] + x0[m + 3]);
    r.y0[m] = (m % 2 == 0 ? 1.0 : -1.0) * (x0[m] - x0[m + 3]);
  }
  return r;
}

Eigen::VectorXd n6_state(const CrossProductReduction& r, double t) {
  const double speed = r.c.norm();
  Eigen::Vector3d y;
  if (speed == 0.0) {
    y = r.y0;
  } else {
    const Eigen::Vector3d axis = r.c / speed;
    const double angle = 2.0 * speed * t;
    const Eigen::Vector3d par = axis * axis.dot(r.y0);
    y = par + std::cos(angle) * (r.y0 - par) + std::sin(angle) * axis.cross(r.y0);
  }
  Eigen::VectorXd x(6);
  for (int j = 0; j < 6; ++j) {
    const int m = j % 3;
    x[j] = r.c[m] + 0.5 * (j % 2 == 0 ? 1.0 : -1.0) * y[m];
  }
  return x;
}

}  // namespace l96x
