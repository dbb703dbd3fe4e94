#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <l96x/bifurcation.hpp>
#include <l96x/dynamics.hpp>
#include <l96x/equilibria.hpp>
#include <l96x/errors.hpp>
#include <l96x/experiments.hpp>
#include <l96x/gmap.hpp>
#include <l96x/spectral.hpp>

namespace l96x {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double x);

/// Strict double parser: the whole (trimmed) text must be consumed.
/// Throws ParseError otherwise.
double parse_double(std::string_view text);

/// Whole-file helpers.  Throws DomainError when the file cannot be read or
/// written.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// ---------------------------------------------------------------------------
// advection maps: {"terms":[{"a":int,"b":int,"c":real},...]}

std::string gmap_json(const GMap& g);
GMap gmap_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// trajectories: CSV with header t,x0,...,x{N-1}, one row per output time

std::string trajectory_csv(const Trajectory& traj);
Trajectory trajectory_from_csv(const std::string& text);

// ---------------------------------------------------------------------------
// system specs: {"n":..,"advection":"G3",
//                "alpha":scalar|[..],"beta":..,"gamma":..}
// Only constant-in-time forcing is carried; per-site arrays collapse to a
// scalar when every site agrees.

std::string system_spec_json(const SystemSpec& spec, const std::string& advection_source);

struct LoadedSpec {
  SystemSpec spec;
  std::string advection_source;
};

LoadedSpec system_spec_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// per-site coefficient files: CSV with header alpha,beta,gamma and exactly n
// rows, or a JSON object of scalars broadcast to all n sites

struct SiteParams {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  Eigen::VectorXd gamma;
};

SiteParams site_params_from_text(const std::string& text, int n);

// ---------------------------------------------------------------------------
// eigenvalue curves: the sampled curve as s,re,im; the discrete spectrum as
// j,re,im; an SVG drawing of curve, discrete points, and the imaginary axis

std::string eigencurve_csv(const EigenCurve& curve);
std::string discrete_spectrum_csv(const EigenCurve& curve);
EigenCurve eigencurve_from_csv(const std::string& curve_text, const std::string& discrete_text);
std::string eigencurve_svg(const EigenCurve& curve);

// ---------------------------------------------------------------------------
// bifurcation reports

std::string hopf_json(const HopfReport& report);
HopfReport hopf_from_json(const std::string& text);

std::string hopf_hopf_json(const HopfHopfReport& report);
HopfHopfReport hopf_hopf_from_json(const std::string& text);

/// One lattice size of a bifurcation sweep; I1 is empty when the normal form
/// was resonant or the size is an exact tie.
struct SweepRow {
  int n = 0;
  double f1 = 0.0;
  int k = -1;
  double f2 = 0.0;
  int l = -1;
  double alpha0 = 0.0;
  double f3_star = 0.0;
  std::optional<double> i1;
};

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_csv(const std::string& text);

// ---------------------------------------------------------------------------
// stationary solutions: CSV site,F_i,x_i; continuation paths as JSON with the
// homotopy grid and Newton residuals

std::string stationary_csv(const StationaryProblem& prob, const Eigen::VectorXd& x);

struct StationaryTable {
  Eigen::VectorXd f;
  Eigen::VectorXd x;
};

StationaryTable stationary_from_csv(const std::string& text);

std::string path_json(const ContinuationPath& path);
ContinuationPath path_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// ensembles

std::string ensemble_json(const EnsembleSummary& summary);
EnsembleSummary ensemble_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// coexistence table: CSV N,F1,m1,F2,m2,F3_star,F3_tilde (last cell empty when
// no measured value is attached)

std::string table2_csv(const std::vector<Table2Row>& rows);
std::vector<Table2Row> table2_from_csv(const std::string& text);

// ---------------------------------------------------------------------------
// space-time rasters: CSV with header t followed by the refined site
// coordinates, one row per time; SVG heatmap with site across, time upward,
// and a diverging palette centered at zero

std::string hovmoeller_csv(const HovmoellerGrid& grid);
HovmoellerGrid hovmoeller_from_csv(const std::string& text);
std::string hovmoeller_svg(const HovmoellerGrid& grid);

// ---------------------------------------------------------------------------
// command-line report schemas: small JSON formats for the remaining frontend
// outputs so that every emitted file has a loader

/// The energy-preserving advection basis at one locality radius.
struct BasisListing {
  int k = 0;
  std::vector<GMap> maps;
};

std::string basis_listing_json(const BasisListing& listing);
BasisListing basis_listing_from_json(const std::string& text);

/// Conservation audit of one run ({"entries": [...]}; the headline max
/// drift is recomputed from the applicable entries on load).
std::string drift_report_json(const DriftReport& report);
DriftReport drift_report_from_json(const std::string& text);

/// Linear stability of an equilibrium.
std::string stability_json(const StabilityReport& report);
StabilityReport stability_from_json(const std::string& text);

/// Energy-loss audit of one integrator run.
struct EnergyAudit {
  std::string solver;
  long steps = 0;
  long rejected = 0;
  long rhs_evals = 0;
  double t0 = 0.0;
  double t1 = 0.0;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  double endpoint_loss_rate = 0.0;  ///< percent per unit time over the run
  double steady_loss_rate = 0.0;    ///< the same over the second half only
};

std::string energy_audit_json(const EnergyAudit& audit);
EnergyAudit energy_audit_from_json(const std::string& text);

/// Forcing-threshold search result for one attractor class.
struct BracketResult {
  int n = 0;
  int m_target = 0;
  double f_lo = 0.0;
  double f_hi = 0.0;
  double tol_f = 0.0;
  std::uint64_t seed = 0;
  double f3_tilde = 0.0;
};

std::string bracket_json(const BracketResult& result);
BracketResult bracket_from_json(const std::string& text);

/// Four-site polar reduction summary.
std::string polar_reduction_json(const PolarReduction& r);
PolarReduction polar_reduction_from_json(const std::string& text);

/// Six-site cross-product reduction summary.
std::string cross_reduction_json(const CrossProductReduction& r);
CrossProductReduction cross_reduction_from_json(const std::string& text);

}  // namespace l96x
