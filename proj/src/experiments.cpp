#include <l96x/experiments.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <thread>

namespace l96x {
namespace {

constexpr double kMarchStep = 0.002;
constexpr double kFollowLeg = 1000.0;
constexpr int kMaxFollowLegs = 4;
constexpr double kFollowNoise = 1e-4;
constexpr int kMemberScan = 32;

int wrap_index(int i, int n) { return ((i % n) + n) % n; }

double lsq_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const double m = static_cast<double>(t.size());
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  const double denom = m * stt - st * st;
  if (denom == 0.0) throw DomainError("degenerate abscissa for a slope fit");
  return (m * sty - st * sy) / denom;
}

/// Maximum over sites of |x_{i+shift} - x_i|.
double shift_deviation(const Eigen::VectorXd& x, int shift) {
  const int n = static_cast<int>(x.size());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(x[static_cast<int>(wrap_index(i + shift, n))] - x[i]));
  return worst;
}

/// Uniform grid spacing of a trajectory, or a throw when the grid is not
/// uniform enough for lag-based analysis.
double uniform_dt(const Trajectory& traj) {
  if (traj.times.size() < 2) throw DomainError("trajectory has fewer than two samples");
  const double dt = traj.times[1] - traj.times[0];
  for (std::size_t i = 2; i < traj.times.size(); ++i)
    if (std::abs(traj.times[i] - traj.times[i - 1] - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw DomainError("temporal analysis needs a uniform output grid");
  if (dt <= 0.0) throw DomainError("trajectory times must increase");
  return dt;
}

/// Periodic cubic spline through y_0..y_{n-1} at unit spacing: returns the
/// second derivatives M_i from the cyclic tridiagonal system
/// M_{i-1} + 4 M_i + M_{i+1} = 6 (y_{i-1} - 2 y_i + y_{i+1}).
Eigen::VectorXd periodic_spline_moments(const Eigen::VectorXd& y) {
  const int n = static_cast<int>(y.size());
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i)
    rhs[i] = 6.0 * (y[static_cast<int>(wrap_index(i - 1, n))] - 2.0 * y[i] +
                    y[static_cast<int>(wrap_index(i + 1, n))]);
  if (n == 1) return Eigen::VectorXd::Zero(1);
  if (n == 2) {
    // 4 M_i + 2 M_j = rhs_i
    Eigen::VectorXd m(2);
    const double det = 12.0;
    m[0] = (4.0 * rhs[0] - 2.0 * rhs[1]) / det;
    m[1] = (4.0 * rhs[1] - 2.0 * rhs[0]) / det;
    return m;
  }
  // Sherman-Morrison on the Thomas algorithm: A = T + u v^T with the corner
  // entries folded into rank one, T tridiagonal (b' = 4 - gamma terms).
  const double corner = 1.0;
  const double gamma = -4.0;  // any nonzero value != -b works
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, 4.0);
  diag[0] -= gamma;
  diag[n - 1] -= corner * corner / gamma;

  auto thomas = [n, &diag](const Eigen::VectorXd& d) {
    Eigen::VectorXd c_prime(n), x(n);
    Eigen::VectorXd dd = d;
    c_prime[0] = 1.0 / diag[0];
    dd[0] /= diag[0];
    for (int i = 1; i < n; ++i) {
      const double m = diag[i] - c_prime[i - 1];
      c_prime[i] = 1.0 / m;
      dd[i] = (dd[i] - dd[i - 1]) / m;
    }
    x[n - 1] = dd[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = dd[i] - c_prime[i] * x[i + 1];
    return x;
  };

  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  u[0] = gamma;
  u[n - 1] = corner;
  const Eigen::VectorXd y1 = thomas(rhs);
  const Eigen::VectorXd y2 = thomas(u);
  const double vy1 = y1[0] + (corner / gamma) * y1[n - 1];
  const double vy2 = y2[0] + (corner / gamma) * y2[n - 1];
  return y1 - (vy1 / (1.0 + vy2)) * y2;
}

double spline_eval(const Eigen::VectorXd& y, const Eigen::VectorXd& m, double pos) {
  const int n = static_cast<int>(y.size());
  double p = std::fmod(pos, static_cast<double>(n));
  if (p < 0.0) p += n;
  const int i = std::min(static_cast<int>(p), n - 1);
  const int j = static_cast<int>(wrap_index(i + 1, n));
  const double u = p - i;
  const double v = 1.0 - u;
  return y[i] * v + y[j] * u + m[i] / 6.0 * (v * v * v - v) + m[j] / 6.0 * (u * u * u - u);
}

struct MemberOutcome {
  bool ok = false;
  Eigen::VectorXd final_state;
};

/// Follows a state at fixed forcing in legs, classifying at each leg end;
/// stops early once the spatial period differs from m_target.  Returns the
/// last classification and the final state through `state`.
int follow_class(const SystemSpec& spec, Eigen::VectorXd& state, int m_target) {
  int m_now = 0;
  for (int leg = 0; leg < kMaxFollowLegs; ++leg) {
    const Trajectory traj =
        integrate_adaptive(spec, state, 0.0, kFollowLeg, 1e-8, 1e-10, kFollowLeg);
    state = traj.last();
    m_now = spatial_period(state).period;
    if (m_now != m_target) return m_now;
  }
  return m_now;
}

}  // namespace

SpatialPeriod spatial_period(const Eigen::VectorXd& x, double rel_tol) {
  const int n = static_cast<int>(x.size());
  if (n < 1) throw DomainError("spatial period needs a nonempty state");
  if (!(rel_tol >= 0.0)) throw DomainError("spatial period tolerance must be nonnegative");
  const double scale = x.cwiseAbs().maxCoeff();
  if (scale == 0.0) return {1, true};
  for (int m = 1; m < n; ++m) {
    if (n % m != 0) continue;
    if (shift_deviation(x, m) <= rel_tol * scale) return {m, true};
  }
  return {n, false};
}

std::optional<double> temporal_period(const Trajectory& traj, int site, double window,
                                      double threshold) {
  if (site < 0 || site >= traj.n_sites()) throw DomainError("site index out of range");
  if (!(window > 0.0)) throw DomainError("window must be positive");
  const double dt = uniform_dt(traj);
  const double t_end = traj.times.back();
  if (t_end - traj.times.front() < window - 1e-9)
    throw DomainError("window too short: trajectory covers less than the analysis window");

  std::vector<double> y;
  for (std::size_t r = 0; r < traj.times.size(); ++r)
    if (traj.times[r] >= t_end - window - 1e-9 * std::max(1.0, std::abs(t_end)))
      y.push_back(traj.states(static_cast<Eigen::Index>(r), site));
  const int len = static_cast<int>(y.size());
  if (len < 32) throw DomainError("window too short: needs at least 32 samples");

  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / len;
  double var = 0.0;
  for (double v : y) var += (v - mean) * (v - mean);
  double scale = 0.0;
  for (double v : y) scale = std::max(scale, std::abs(v));
  if (var <= 1e-24 * len * std::max(1.0, scale * scale)) return std::nullopt;  // constant

  const int max_lag = len / 2;
  std::vector<double> c(max_lag + 1, 0.0);
  for (int lag = 1; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (int i = 0; i + lag < len; ++i) acc += (y[i] - mean) * (y[i + lag] - mean);
    c[lag] = acc / var;
  }
  int start = 0;
  for (int lag = 1; lag <= max_lag && start == 0; ++lag)
    if (c[lag] < 0.0) start = lag;
  if (start == 0) return std::nullopt;  // never decorrelates: drift or constant

  double best = -2.0;
  for (int lag = start; lag <= max_lag; ++lag) best = std::max(best, c[lag]);
  if (best < threshold) return std::nullopt;  // chaotic

  for (int lag = start + 1; lag + 1 <= max_lag; ++lag) {
    if (c[lag] >= c[lag - 1] && c[lag] >= c[lag + 1] && c[lag] >= 0.9 * best) {
      const double denom = c[lag - 1] - 2.0 * c[lag] + c[lag + 1];
      const double shift = (denom < 0.0) ? 0.5 * (c[lag - 1] - c[lag + 1]) / denom : 0.0;
      return dt * (lag + shift);
    }
  }
  return std::nullopt;
}

CrestTrack track_crest(const Trajectory& traj) {
  const int n = traj.n_sites();
  if (n < 3) throw DomainError("crest tracking needs at least three sites");
  uniform_dt(traj);

  CrestTrack track;
  int j0 = 0;
  for (int i = 1; i < n; ++i)
    if (traj.states(0, i) > traj.states(0, j0)) j0 = i;
  double prev = j0;
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    const int center = static_cast<int>(std::lround(prev));
    int local = center;
    double val = -std::numeric_limits<double>::infinity();
    for (int d = -3; d <= 3; ++d) {
      const int i = static_cast<int>(wrap_index(center + d, n));
      if (traj.states(static_cast<Eigen::Index>(r), i) > val) {
        val = traj.states(static_cast<Eigen::Index>(r), i);
        local = center + d;  // unwrapped coordinate
      }
    }
    const double a = traj.states(static_cast<Eigen::Index>(r),
                                 static_cast<int>(wrap_index(local - 1, n)));
    const double b =
        traj.states(static_cast<Eigen::Index>(r), static_cast<int>(wrap_index(local, n)));
    const double cc = traj.states(static_cast<Eigen::Index>(r),
                                  static_cast<int>(wrap_index(local + 1, n)));
    const double denom = a - 2.0 * b + cc;
    const double shift = (denom < 0.0) ? 0.5 * (a - cc) / denom : 0.0;
    prev = local + shift;
    track.times.push_back(traj.times[r]);
    track.positions.push_back(prev);
  }
  track.speed = lsq_slope(track.times, track.positions);
  return track;
}

DriftEstimate drift_speed(const Trajectory& traj) {
  const int n = traj.n_sites();
  if (n < 4) throw DomainError("drift estimation needs at least four sites");
  uniform_dt(traj);
  const std::size_t rows = traj.times.size();

  std::vector<double> power(n / 2 + 1, 0.0);
  std::vector<std::vector<std::complex<double>>> coef(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    coef[r].resize(n / 2 + 1);
    for (int k = 1; k <= n / 2; ++k) {
      std::complex<double> acc(0.0, 0.0);
      for (int j = 0; j < n; ++j)
        acc += traj.states(static_cast<Eigen::Index>(r), j) *
               std::polar(1.0, -2.0 * M_PI * k * j / n);
      coef[r][k] = acc;
      power[k] += std::norm(acc);
    }
  }
  int k_dom = 1;
  for (int k = 2; k <= n / 2; ++k)
    if (power[k] > power[k_dom]) k_dom = k;
  if (power[k_dom] == 0.0) throw DomainError("drift estimation needs a non-constant window");

  std::vector<double> phi(rows);
  phi[0] = std::arg(coef[0][k_dom]);
  for (std::size_t r = 1; r < rows; ++r) {
    double d = std::arg(coef[r][k_dom]) - std::arg(coef[r - 1][k_dom]);
    while (d > M_PI) d -= 2.0 * M_PI;
    while (d < -M_PI) d += 2.0 * M_PI;
    phi[r] = phi[r - 1] + d;
  }
  DriftEstimate est;
  est.wavenumber = k_dom;
  // x_j(t) = f(j + c t) gives the mode-k coefficient a phase +2 pi k c t / n
  // and moves features toward smaller indices for c > 0; flip the sign so
  // leftward motion is negative, matching the crest-track convention.
  est.speed = -lsq_slope(traj.times, phi) * n / (2.0 * M_PI * k_dom);
  return est;
}

HovmoellerGrid hovmoeller_grid(const Trajectory& traj, double t0, double t1, int refine) {
  if (refine < 1) throw DomainError("refinement factor must be at least one");
  if (!(t1 > t0)) throw DomainError("empty time window");
  const int n = traj.n_sites();

  HovmoellerGrid grid;
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < traj.times.size(); ++r)
    if (traj.times[r] >= t0 - 1e-12 * std::max(1.0, std::abs(t0)) &&
        traj.times[r] <= t1 + 1e-12 * std::max(1.0, std::abs(t1)))
      rows.push_back(r);
  if (rows.empty()) throw DomainError("empty time window");

  grid.positions.resize(static_cast<std::size_t>(n) * refine);
  for (std::size_t j = 0; j < grid.positions.size(); ++j)
    grid.positions[j] = static_cast<double>(j) / refine;
  grid.values.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(grid.positions.size()));
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    grid.times.push_back(traj.times[rows[ri]]);
    const Eigen::VectorXd y = traj.state(rows[ri]);
    const Eigen::VectorXd m = periodic_spline_moments(y);
    for (std::size_t j = 0; j < grid.positions.size(); ++j)
      grid.values(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(j)) =
          spline_eval(y, m, grid.positions[j]);
  }
  return grid;
}

Eigen::VectorXd ensemble_member_start(int n, double forcing, std::uint64_t seed,
                                      std::uint32_t index) {
  if (n < 1) throw DomainError("member start needs at least one site");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    index};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 0.01 * std::max(1.0, std::abs(forcing)));
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, forcing);
  for (int i = 0; i < n; ++i) x[i] += normal(rng);
  return x;
}

EnsembleSummary ensemble_search(const SystemSpec& spec, double forcing, int runs, double t_end,
                                std::uint64_t seed, int jobs) {
  if (runs < 1) throw DomainError("ensemble needs at least one run");
  if (!(t_end > 0.0)) throw DomainError("ensemble horizon must be positive");
  if (jobs < 1) throw DomainError("job count must be at least one");

  SystemSpec member_spec = spec;
  member_spec.gamma = Eigen::VectorXd::Constant(spec.n, forcing);
  member_spec.forcing_t = nullptr;

  std::vector<MemberOutcome> outcomes(static_cast<std::size_t>(runs));
  auto run_stripe = [&](int offset) {
    for (int i = offset; i < runs; i += jobs) {
      try {
        const Eigen::VectorXd x0 =
            ensemble_member_start(spec.n, forcing, seed, static_cast<std::uint32_t>(i));
        const Trajectory traj =
            integrate_adaptive(member_spec, x0, 0.0, t_end, 1e-8, 1e-10, t_end);
        outcomes[static_cast<std::size_t>(i)] = {true, traj.last()};
      } catch (const DomainError&) {
        outcomes[static_cast<std::size_t>(i)].ok = false;
      }
    }
  };
  if (jobs == 1) {
    run_stripe(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(run_stripe, j);
    for (auto& th : pool) th.join();
  }

  EnsembleSummary summary;
  summary.n = spec.n;
  summary.forcing = forcing;
  summary.runs = runs;
  summary.seed = seed;
  for (const MemberOutcome& out : outcomes) {
    if (!out.ok) {
      ++summary.unclassified;
      continue;
    }
    const SpatialPeriod sp = spatial_period(out.final_state);
    auto it = std::find_if(summary.classes.begin(), summary.classes.end(),
                           [&](const AttractorClass& c) { return c.spatial_period == sp.period; });
    if (it == summary.classes.end()) {
      AttractorClass cls;
      cls.spatial_period = sp.period;
      cls.confident = sp.confident;
      cls.member_count = 1;
      cls.representative = out.final_state;
      summary.classes.push_back(std::move(cls));
    } else {
      ++it->member_count;
    }
  }
  std::sort(summary.classes.begin(), summary.classes.end(),
            [](const AttractorClass& a, const AttractorClass& b) {
              if (a.member_count != b.member_count) return a.member_count > b.member_count;
              return a.spatial_period < b.spatial_period;
            });
  for (AttractorClass& cls : summary.classes) {
    const Trajectory tail =
        integrate_adaptive(member_spec, cls.representative, 0.0, 50.0, 1e-8, 1e-10, 0.01);
    cls.temporal_period = temporal_period(tail, 0);
  }
  return summary;
}

double ns_bracket(const SystemSpec& spec, int m_target, double f_lo, double f_hi, double tol_f,
                  std::uint64_t seed) {
  if (!(f_lo < f_hi)) throw DomainError("bracket needs f_lo < f_hi");
  if (!(tol_f > 0.0)) throw DomainError("bracket tolerance must be positive");

  auto at_forcing = [&spec](double f) {
    SystemSpec s = spec;
    s.gamma = Eigen::VectorXd::Constant(spec.n, f);
    s.forcing_t = nullptr;
    return s;
  };

  // locate a member of the target class at f_hi
  Eigen::VectorXd state;
  {
    const SystemSpec s = at_forcing(f_hi);
    for (std::uint32_t idx = 0; idx < kMemberScan; ++idx) {
      const Trajectory traj =
          integrate_adaptive(s, ensemble_member_start(spec.n, f_hi, seed, idx), 0.0, 1000.0,
                             1e-8, 1e-10, 1000.0);
      if (spatial_period(traj.last()).period == m_target) {
        state = traj.last();
        break;
      }
    }
    if (state.size() == 0)
      throw DomainError("no member settles into spatial period " + std::to_string(m_target) +
                        " at the upper forcing");
  }

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> noise(0.0, kFollowNoise);
  auto perturbed = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = x;
    for (int i = 0; i < static_cast<int>(y.size()); ++i) y[i] += noise(rng);
    return y;
  };

  // march down until the class is lost
  double f_held = f_hi;
  double f_lost = -1.0;
  while (true) {
    const double f_next = f_held - kMarchStep;
    if (f_next < f_lo - 1e-12)
      throw DomainError("attractor class persisted down to the lower forcing");
    Eigen::VectorXd trial = perturbed(state);
    if (follow_class(at_forcing(f_next), trial, m_target) == m_target) {
      f_held = f_next;
      state = trial;
    } else {
      f_lost = f_next;
      break;
    }
  }

  // bisect the bracketing step
  while (f_held - f_lost > tol_f) {
    const double mid = 0.5 * (f_held + f_lost);
    Eigen::VectorXd trial = perturbed(state);
    if (follow_class(at_forcing(mid), trial, m_target) == m_target) {
      f_held = mid;
      state = trial;
    } else {
      f_lost = mid;
    }
  }
  return 0.5 * (f_held + f_lost);
}

Table2Row table2_row(const GMap& g, int n) {
  const HopfHopfReport hh = hopf_hopf(g, n);
  Table2Row row;
  row.n = n;
  row.f1 = hh.F1;
  row.m1 = n / std::gcd(hh.mode_k, n);
  row.f2 = hh.F2;
  row.m2 = n / std::gcd(hh.mode_l, n);
  row.f3_star = hh.tie ? hh.F1 : hh.F3_star;
  return row;
}

}  // namespace l96x
