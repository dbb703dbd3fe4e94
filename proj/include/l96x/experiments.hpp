#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <l96x/bifurcation.hpp>
#include <l96x/dynamics.hpp>
#include <l96x/errors.hpp>
#include <l96x/gmap.hpp>

namespace l96x {

/// Smallest divisor m of the lattice size with rho^m(x) close to x.
struct SpatialPeriod {
  int period = 0;
  /// Set when a divisor matched within tolerance (a constant state matches
  /// m = 1).  When no proper divisor matches, the trivial period N is
  /// reported with the flag cleared.
  bool confident = false;
};

/// Cyclic-shift classification with relative tolerance rel_tol on the
/// max-norm of the snapshot.
SpatialPeriod spatial_period(const Eigen::VectorXd& x, double rel_tol = 1e-3);

/// Dominant oscillation period of site's series over the trailing window of
/// the trajectory, from the first strong autocorrelation peak past the
/// initial decorrelation, with parabolic sub-sample refinement.  Returns
/// nothing for constant-like series and for series with no peak above
/// threshold (chaotic).  Requires a uniform output grid covering the window.
std::optional<double> temporal_period(const Trajectory& traj, int site,
                                      double window = 50.0, double threshold = 0.5);

/// One wave crest followed through a trajectory window: sub-site positions
/// by parabolic refinement around the running maximum, unwrapped across the
/// periodic boundary, with the least-squares speed (sites per time unit,
/// negative = leftward).
struct CrestTrack {
  std::vector<double> times;
  std::vector<double> positions;
  double speed = 0.0;
};

CrestTrack track_crest(const Trajectory& traj);

/// Bulk pattern speed from the unwrapped phase drift of the dominant
/// Fourier mode (negative = leftward).  Robust for chaotic windows where a
/// single crest cannot be followed.
struct DriftEstimate {
  double speed = 0.0;
  int wavenumber = 0;  ///< mode whose phase was tracked
};

DriftEstimate drift_speed(const Trajectory& traj);

/// Site-by-time raster of a trajectory window, with each row refined
/// across sites by a periodic cubic spline.
struct HovmoellerGrid {
  std::vector<double> times;
  std::vector<double> positions;  ///< refined site coordinates in [0, N)
  Eigen::MatrixXd values;         ///< times.size() rows, positions.size() columns
};

HovmoellerGrid hovmoeller_grid(const Trajectory& traj, double t0, double t1, int refine = 4);

/// One attractor class of an ensemble, keyed by spatial period.
struct AttractorClass {
  int spatial_period = 0;
  bool confident = false;  ///< classification flag of the representative
  std::optional<double> temporal_period;
  int member_count = 0;
  Eigen::VectorXd representative;  ///< final state of the first member seen
};

struct EnsembleSummary {
  int n = 0;
  double forcing = 0.0;
  int runs = 0;
  std::uint64_t seed = 0;
  std::vector<AttractorClass> classes;  ///< most-populated first
  int unclassified = 0;                 ///< members that blew up or failed
};

/// Initial state of ensemble member `index`: forcing * e plus normal noise
/// of scale 0.01 * max(1, |forcing|), drawn from an RNG derived from
/// (seed, index) so members are independent and order-free.
Eigen::VectorXd ensemble_member_start(int n, double forcing, std::uint64_t seed,
                                      std::uint32_t index);

/// Integrates `runs` members to t_end and groups the final snapshots by
/// spatial period.  Each class also carries the temporal period of a short
/// continuation of its representative.  `jobs` threads integrate members
/// in stripes; results are identical for any job count.
EnsembleSummary ensemble_search(const SystemSpec& spec, double forcing, int runs,
                                double t_end = 1000.0, std::uint64_t seed = 0, int jobs = 1);

/// Locates the forcing below which the attractor class of spatial period
/// m_target stops being observed, by lowering F in steps of 0.002 from
/// f_hi (re-seeding each leg from the followed cycle plus 1e-4 noise and
/// integrating up to 4000 units), then bisecting the bracketing step down
/// to tol_f.  Returns the bracket midpoint.  Throws DomainError when no
/// member settles into the class at f_hi, and when the class persists all
/// the way down to f_lo.
double ns_bracket(const SystemSpec& spec, int m_target, double f_lo, double f_hi,
                  double tol_f = 5e-4, std::uint64_t seed = 0);

/// Analytic columns of the coexistence table: the first two Hopf values
/// with the spatial periods of the born cycles, and the tangent estimate of
/// the torus bifurcation.  The empirical column is left unset; fill it
/// from ns_bracket when wanted.
struct Table2Row {
  int n = 0;
  double f1 = 0.0;
  int m1 = 0;
  double f2 = 0.0;
  int m2 = 0;
  double f3_star = 0.0;
  std::optional<double> f3_tilde;
};

Table2Row table2_row(const GMap& g, int n);

}  // namespace l96x
