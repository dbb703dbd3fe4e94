#include <l96x/cli.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <l96x/bifurcation.hpp>
#include <l96x/dynamics.hpp>
#include <l96x/equilibria.hpp>
#include <l96x/errors.hpp>
#include <l96x/experiments.hpp>
#include <l96x/gmap.hpp>
#include <l96x/io.hpp>
#include <l96x/spectral.hpp>

namespace l96x {
namespace {

/// Writes text to the path, or to stdout (newline-terminated) when no path
/// was given.
void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(out_path, text);
  }
}

/// Parses a comma-separated list of site values.
Eigen::VectorXd state_from_list(const std::string& text, int n) {
  std::vector<double> vals;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string piece =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    vals.push_back(parse_double(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(vals.size()) != n)
    throw DomainError("--state has " + std::to_string(vals.size()) + " values; expected " +
                      std::to_string(n));
  return Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

/// Shared initial-state options: a trajectory file (its last row), an inline
/// list, or a seeded ensemble-style start around the given forcing level.
struct StateOptions {
  std::string x0_path;
  std::string state;
  std::uint64_t seed = 0;
  std::uint32_t member = 0;
};

void add_state_options(CLI::App* cmd, StateOptions& o) {
  cmd->add_option("--x0", o.x0_path,
                  "trajectory CSV whose last row seeds the run (chains runs)");
  cmd->add_option("--state", o.state, "inline initial state, comma-separated site values");
  cmd->add_option("--seed", o.seed, "RNG seed for the default perturbed start")
      ->capture_default_str();
  cmd->add_option("--member", o.member, "member index within the seed's family")
      ->capture_default_str();
}

Eigen::VectorXd initial_state(const StateOptions& o, int n, double forcing_hint) {
  if (!o.x0_path.empty()) {
    const Trajectory prior = trajectory_from_csv(read_text_file(o.x0_path));
    if (prior.n_sites() != n)
      throw DomainError("initial state has " + std::to_string(prior.n_sites()) +
                        " sites; expected " + std::to_string(n));
    return prior.last();
  }
  if (!o.state.empty()) return state_from_list(o.state, n);
  return ensemble_member_start(n, forcing_hint, o.seed, o.member);
}

GMap gmap_of(const std::string& expr) { return parse_gmap(expr).resolved; }

// ---------------------------------------------------------------------------
// subcommand option blocks

struct BasisOpts {
  int k = 1;
  std::string out;
};

struct EigencurveOpts {
  std::string gmap;
  int n = 0;
  int samples = 512;
  std::string out, discrete_out, svg;
};

struct HopfOpts {
  std::string gmap;
  int n = 0;
  bool second = false;
  std::string out;
};

struct HopfHopfOpts {
  std::string gmap;
  int n = 0;
  std::vector<int> sizes;
  std::string out, csv, table2;
};

struct SimulateOpts {
  std::string gmap = "G3";
  int n = 0;
  double forcing = 8.0;
  std::string params_path, spec_path;
  StateOptions start;
  std::string solver = "dopri5";
  double dt = 0.05;
  double rtol = 1e-8, atol = 1e-10, dt_out = 0.0;
  double t0 = 0.0, t1 = 100.0;
  std::string out, emit_spec;
};

struct HovmoellerOpts {
  std::string in;
  double t0 = 0.0, t1 = 0.0;
  int refine = 4;
  std::string out, svg;
};

struct StationaryOpts {
  std::string gmap = "G3";
  int n = 0;
  double forcing = 1.0;
  std::string params_path;
  int steps = 10;
  double tol = 1e-12;
  bool stability = false;
  std::string out, path_out, stability_out;
};

struct EnsembleOpts {
  std::string gmap = "G3";
  int n = 0;
  double forcing = 0.0;
  int runs = 100;
  double t_end = 1000.0;
  std::uint64_t seed = 0;
  int jobs = 1;
  int bracket_m = 0;
  double f_lo = 0.0, f_hi = 0.0, tol_f = 5e-4;
  std::string out;
};

struct EnergyAuditOpts {
  std::string gmap = "G3";
  int n = 0;
  double energy = 400.0;
  std::string solver = "rk4";
  double dt = 0.05;
  double rtol = 1e-8, atol = 1e-10;
  double t1 = 100.0;
  std::string x0_path, state, out;
};

struct InvariantsOpts {
  std::string gmap;
  int n = 0;
  double t1 = 100.0;
  double rtol = 1e-10, atol = 1e-12;
  StateOptions start;
  std::string out;
};

struct ReduceOpts {
  int n = 4;
  StateOptions start;
  double t0 = 0.0, t1 = 20.0, dt_out = 0.01;
  std::string out, summary_out;
};

// ---------------------------------------------------------------------------
// subcommand bodies

void run_basis(const BasisOpts& o) {
  BasisListing listing;
  listing.k = o.k;
  listing.maps = basis(o.k);
  emit(basis_listing_json(listing), o.out);
}

void run_eigencurve(const EigencurveOpts& o) {
  const LaurentPoly p = laurent_of(gmap_of(o.gmap));
  const EigenCurve curve = eigencurve(p, o.n, o.samples);
  emit(eigencurve_csv(curve), o.out);
  if (!o.discrete_out.empty()) write_text_file(o.discrete_out, discrete_spectrum_csv(curve));
  if (!o.svg.empty()) write_text_file(o.svg, eigencurve_svg(curve));
}

void run_hopf(const HopfOpts& o) {
  const GMap g = gmap_of(o.gmap);
  const LaurentPoly p = laurent_of(g);
  HopfReport report;
  if (o.second) {
    report = second_hopf(p, o.n);
  } else {
    report = first_hopf(p, o.n);
    // attach the first Lyapunov coefficient when the crossing is simple
    if (!report.tie) report = first_lyapunov(g, o.n);
  }
  emit(hopf_json(report), o.out);
}

void run_hopf_hopf(const HopfHopfOpts& o) {
  const GMap g = gmap_of(o.gmap);
  if (o.sizes.empty()) {
    if (o.n == 0) throw CLI::RequiredError("--n or --sizes");
    emit(hopf_hopf_json(hopf_hopf(g, o.n)), o.out);
    return;
  }
  std::vector<SweepRow> sweep;
  std::vector<Table2Row> table;
  for (const int sz : o.sizes) {
    const HopfHopfReport hh = hopf_hopf(g, sz);
    SweepRow row;
    row.n = sz;
    row.f1 = hh.F1;
    row.k = hh.mode_k;
    row.f2 = hh.F2;
    row.l = hh.mode_l;
    row.alpha0 = hh.alpha0;
    row.f3_star = hh.tie ? hh.F1 : hh.F3_star;
    try {
      row.i1 = first_lyapunov(g, sz).I1;
    } catch (const DomainError&) {
      row.i1 = std::nullopt;  // tied first crossing: no simple-cycle coefficient
    }
    sweep.push_back(row);
    table.push_back(table2_row(g, sz));
  }
  if (!o.csv.empty()) write_text_file(o.csv, sweep_csv(sweep));
  if (!o.table2.empty()) write_text_file(o.table2, table2_csv(table));
  if (o.csv.empty() && o.table2.empty()) emit(sweep_csv(sweep), o.out);
}

SystemSpec simulate_spec(const SimulateOpts& o, std::string* advection_source) {
  if (!o.spec_path.empty()) {
    LoadedSpec loaded = system_spec_from_json(read_text_file(o.spec_path));
    *advection_source = loaded.advection_source;
    return loaded.spec;
  }
  if (o.n == 0) throw CLI::RequiredError("--n (or --spec)");
  const GMapExpr expr = parse_gmap(o.gmap);
  *advection_source = expr.source;
  SystemSpec spec = SystemSpec::standard(expr.resolved, o.n, o.forcing);
  if (!o.params_path.empty()) {
    const SiteParams sp = site_params_from_text(read_text_file(o.params_path), o.n);
    spec.alpha = sp.alpha;
    spec.beta = sp.beta;
    spec.gamma = sp.gamma;
    spec.validate();
  }
  return spec;
}

void run_simulate(const SimulateOpts& o) {
  std::string advection_source;
  const SystemSpec spec = simulate_spec(o, &advection_source);
  const Eigen::VectorXd x0 = initial_state(o.start, spec.n, spec.gamma.mean());
  const Trajectory traj = o.solver == "rk4"
                              ? integrate_rk4(spec, x0, o.t0, o.t1, o.dt)
                              : integrate_adaptive(spec, x0, o.t0, o.t1, o.rtol, o.atol, o.dt_out);
  emit(trajectory_csv(traj), o.out);
  if (!o.emit_spec.empty())
    write_text_file(o.emit_spec, system_spec_json(spec, advection_source));
}

void run_hovmoeller(const HovmoellerOpts& o) {
  const Trajectory traj = trajectory_from_csv(read_text_file(o.in));
  const HovmoellerGrid grid = hovmoeller_grid(traj, o.t0, o.t1, o.refine);
  emit(hovmoeller_csv(grid), o.out);
  if (!o.svg.empty()) write_text_file(o.svg, hovmoeller_svg(grid));
}

void run_stationary(const StationaryOpts& o) {
  const GMap g = gmap_of(o.gmap);
  StationaryProblem prob;
  if (o.params_path.empty()) {
    prob = StationaryProblem::homogeneous(g, o.n, o.forcing);
  } else {
    const SiteParams sp = site_params_from_text(read_text_file(o.params_path), o.n);
    if ((sp.alpha.array() != 1.0).any())
      throw DomainError(
          "stationary analysis covers alpha = 1 at every site; rescale the system first");
    prob.n = o.n;
    prob.advection = g;
    prob.b = sp.beta;
    prob.f = sp.gamma;
    prob.validate();
  }
  const ContinuationPath path = homotopy_solve(prob, o.steps, o.tol);
  if (!o.path_out.empty()) write_text_file(o.path_out, path_json(path));
  if (!path.complete) throw DomainError("continuation incomplete: " + path.note);
  const Eigen::VectorXd x = path.solution();
  emit(stationary_csv(prob, x), o.out);
  if (o.stability || !o.stability_out.empty())
    emit(stability_json(local_stability(prob, x)), o.stability_out);
}

void run_ensemble(const EnsembleOpts& o, bool forcing_given) {
  const GMap g = gmap_of(o.gmap);
  if (o.bracket_m > 0) {
    const SystemSpec spec = SystemSpec::standard(g, o.n, o.f_hi);
    BracketResult result;
    result.n = o.n;
    result.m_target = o.bracket_m;
    result.f_lo = o.f_lo;
    result.f_hi = o.f_hi;
    result.tol_f = o.tol_f;
    result.seed = o.seed;
    result.f3_tilde = ns_bracket(spec, o.bracket_m, o.f_lo, o.f_hi, o.tol_f, o.seed);
    emit(bracket_json(result), o.out);
    return;
  }
  if (!forcing_given) throw CLI::RequiredError("--forcing");
  const SystemSpec spec = SystemSpec::standard(g, o.n, o.forcing);
  const EnsembleSummary summary =
      ensemble_search(spec, o.forcing, o.runs, o.t_end, o.seed, o.jobs);
  emit(ensemble_json(summary), o.out);
}

void run_energy_audit(const EnergyAuditOpts& o) {
  const SystemSpec spec = SystemSpec::inviscid(gmap_of(o.gmap), o.n);
  Eigen::VectorXd x0;
  if (!o.x0_path.empty() || !o.state.empty()) {
    StateOptions start;
    start.x0_path = o.x0_path;
    start.state = o.state;
    x0 = initial_state(start, o.n, 0.0);
  } else {
    // reference profile x_j = c (1 + sin 2 pi j / n), scaled to the requested
    // energy: smooth data that break up into statistically steady advection
    x0.resize(o.n);
    for (int i = 0; i < o.n; ++i) x0[i] = 1.0 + std::sin(2.0 * M_PI * i / o.n);
    x0 *= std::sqrt(o.energy / x0.squaredNorm());
  }
  const Trajectory traj = o.solver == "rk4"
                              ? integrate_rk4(spec, x0, 0.0, o.t1, o.dt)
                              : integrate_adaptive(spec, x0, 0.0, o.t1, o.rtol, o.atol, 0.0);
  const Quantity energy = total_energy();
  EnergyAudit audit;
  audit.solver = traj.meta.solver;
  audit.steps = traj.meta.steps;
  audit.rejected = traj.meta.rejected;
  audit.rhs_evals = traj.meta.rhs_evals;
  audit.t0 = traj.times.front();
  audit.t1 = traj.times.back();
  audit.initial_energy = energy.eval(traj.initial());
  audit.final_energy = energy.eval(traj.last());
  audit.endpoint_loss_rate = loss_rate_percent(traj, energy);
  audit.steady_loss_rate = steady_loss_rate_percent(traj, energy);
  emit(energy_audit_json(audit), o.out);
}

void run_invariants(const InvariantsOpts& o) {
  const SystemSpec spec = SystemSpec::inviscid(gmap_of(o.gmap), o.n);
  Eigen::VectorXd x0;
  if (!o.start.x0_path.empty() || !o.start.state.empty()) {
    x0 = initial_state(o.start, o.n, 0.0);
  } else {
    // unforced default: unit-scale noise about zero
    x0 = 100.0 * ensemble_member_start(o.n, 0.0, o.start.seed, o.start.member);
  }
  const Trajectory traj = integrate_adaptive(spec, x0, 0.0, o.t1, o.rtol, o.atol, 0.0);
  emit(drift_report_json(audit(traj, symmetric_invariants(o.n))), o.out);
}

void run_reduce(const ReduceOpts& o) {
  if (o.start.x0_path.empty() && o.start.state.empty())
    throw CLI::RequiredError("--state or --x0");
  const Eigen::VectorXd x0 = initial_state(o.start, o.n, 0.0);
  if (o.t1 <= o.t0) throw DomainError("t1 must exceed t0");
  if (o.n == 4) {
    const PolarReduction r = reduce_n4(x0);
    emit(polar_reduction_json(r), o.summary_out);
    if (!o.out.empty())
      write_text_file(o.out, trajectory_csv(reconstruct_n4(r, o.t0, o.t1, o.dt_out)));
  } else {
    const CrossProductReduction r = reduce_n6(x0);
    emit(cross_reduction_json(r), o.summary_out);
    if (!o.out.empty()) {
      Trajectory traj;
      const int rows = static_cast<int>(std::llround((o.t1 - o.t0) / o.dt_out)) + 1;
      traj.states.resize(rows, 6);
      for (int row = 0; row < rows; ++row) {
        const double t = o.t0 + row * o.dt_out;
        traj.times.push_back(t);
        traj.states.row(row) = n6_state(r, t).transpose();
      }
      traj.meta.solver = "closed-form";
      write_text_file(o.out, trajectory_csv(traj));
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Generalized Lorenz '96 toolkit: advection classification, circulant "
               "spectra, closed-form bifurcation analysis, audited simulation, and "
               "attractor surveys",
               "l96x"};
  app.require_subcommand(1);

  const char* const kGmapHelp = "advection map expression, e.g. G3 or \"G3 - ~G3\"";
  const char* const kNHelp = "number of lattice sites";
  const char* const kOutHelp = "output path (stdout when omitted)";

  BasisOpts basis_o;
  CLI::App* basis_cmd =
      app.add_subcommand("basis", "List the energy-preserving advection basis at locality k");
  basis_cmd->add_option("--k", basis_o.k, "locality radius")
      ->required()
      ->check(CLI::PositiveNumber);
  basis_cmd->add_option("--out", basis_o.out, kOutHelp);
  basis_cmd->callback([&] { run_basis(basis_o); });

  EigencurveOpts eig_o;
  CLI::App* eig_cmd = app.add_subcommand(
      "eigencurve", "Symbol curve and discrete spectrum of the linearization at the "
                    "constant state (F = 1 scaling)");
  eig_cmd->add_option("--gmap", eig_o.gmap, kGmapHelp)->required();
  eig_cmd->add_option("--n", eig_o.n, kNHelp)->required()->check(CLI::PositiveNumber);
  eig_cmd->add_option("--samples", eig_o.samples, "points on the continuous curve")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  eig_cmd->add_option("--out", eig_o.out, "curve CSV path (stdout when omitted)");
  eig_cmd->add_option("--discrete-out", eig_o.discrete_out, "discrete spectrum CSV path");
  eig_cmd->add_option("--svg", eig_o.svg, "optional SVG plot of curve and spectrum");
  eig_cmd->callback([&] { run_eigencurve(eig_o); });

  HopfOpts hopf_o;
  CLI::App* hopf_cmd = app.add_subcommand(
      "hopf", "First destabilizing forcing with mode, period, and cycle type");
  hopf_cmd->add_option("--gmap", hopf_o.gmap, kGmapHelp)->required();
  hopf_cmd->add_option("--n", hopf_o.n, kNHelp)->required()->check(CLI::PositiveNumber);
  hopf_cmd->add_flag("--second", hopf_o.second,
                     "report the second crossing instead of the first");
  hopf_cmd->add_option("--out", hopf_o.out, kOutHelp);
  hopf_cmd->callback([&] { run_hopf(hopf_o); });

  HopfHopfOpts hh_o;
  CLI::App* hh_cmd = app.add_subcommand(
      "hopf-hopf", "Double-Hopf analysis: interaction matrix and torus-branch tangent");
  hh_cmd->add_option("--gmap", hh_o.gmap, kGmapHelp)->required();
  hh_cmd->add_option("--n", hh_o.n, kNHelp)->check(CLI::PositiveNumber);
  hh_cmd->add_option("--sizes", hh_o.sizes, "lattice sizes for a sweep, comma-separated")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  hh_cmd->add_option("--out", hh_o.out, kOutHelp);
  hh_cmd->add_option("--csv", hh_o.csv, "sweep CSV path (with --sizes)");
  hh_cmd->add_option("--table2", hh_o.table2,
                     "coexistence-table CSV path (with --sizes; measured column empty)");
  hh_cmd->callback([&] { run_hopf_hopf(hh_o); });

  SimulateOpts sim_o;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Integrate the lattice system");
  CLI::Option* sim_gmap = sim_cmd->add_option("--gmap", sim_o.gmap, kGmapHelp);
  sim_gmap->capture_default_str();
  CLI::Option* sim_n = sim_cmd->add_option("--n", sim_o.n, kNHelp)->check(CLI::PositiveNumber);
  CLI::Option* sim_f =
      sim_cmd->add_option("--forcing", sim_o.forcing, "constant forcing")->capture_default_str();
  CLI::Option* sim_params = sim_cmd->add_option(
      "--params", sim_o.params_path,
      "per-site parameter file: CSV with header alpha,beta,gamma, or JSON scalar broadcast");
  sim_cmd->add_option("--spec", sim_o.spec_path, "system spec JSON (replaces the flags above)")
      ->excludes(sim_gmap)
      ->excludes(sim_n)
      ->excludes(sim_f)
      ->excludes(sim_params);
  add_state_options(sim_cmd, sim_o.start);
  sim_cmd->add_option("--solver", sim_o.solver, "rk4 or dopri5")
      ->capture_default_str()
      ->check(CLI::IsMember({"rk4", "dopri5"}));
  sim_cmd->add_option("--dt", sim_o.dt, "rk4 step size")->capture_default_str();
  sim_cmd->add_option("--rtol", sim_o.rtol, "adaptive relative tolerance")
      ->capture_default_str();
  sim_cmd->add_option("--atol", sim_o.atol, "adaptive absolute tolerance")
      ->capture_default_str();
  sim_cmd->add_option("--dt-out", sim_o.dt_out,
                      "adaptive output spacing (0 = every accepted step)")
      ->capture_default_str();
  sim_cmd->add_option("--t0", sim_o.t0, "start time")->capture_default_str();
  sim_cmd->add_option("--t1", sim_o.t1, "end time")->capture_default_str();
  sim_cmd->add_option("--out", sim_o.out, "trajectory CSV path (stdout when omitted)");
  sim_cmd->add_option("--emit-spec", sim_o.emit_spec, "also write the resolved spec JSON");
  sim_cmd->callback([&] { run_simulate(sim_o); });

  HovmoellerOpts hov_o;
  CLI::App* hov_cmd = app.add_subcommand(
      "hovmoeller", "Spline-refined site/time raster of a trajectory window");
  hov_cmd->add_option("--in", hov_o.in, "trajectory CSV to rasterize")->required();
  hov_cmd->add_option("--t0", hov_o.t0, "window start")->required();
  hov_cmd->add_option("--t1", hov_o.t1, "window end")->required();
  hov_cmd->add_option("--refine", hov_o.refine, "spline samples per site")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  hov_cmd->add_option("--out", hov_o.out, kOutHelp);
  hov_cmd->add_option("--svg", hov_o.svg, "optional SVG heatmap (time upward)");
  hov_cmd->callback([&] { run_hovmoeller(hov_o); });

  StationaryOpts stat_o;
  CLI::App* stat_cmd = app.add_subcommand(
      "stationary", "Stationary solution by homotopy from the decoupled system");
  stat_cmd->add_option("--gmap", stat_o.gmap, kGmapHelp)->capture_default_str();
  stat_cmd->add_option("--n", stat_o.n, kNHelp)->required()->check(CLI::PositiveNumber);
  stat_cmd->add_option("--forcing", stat_o.forcing, "constant forcing")->capture_default_str();
  stat_cmd->add_option("--params", stat_o.params_path,
                       "per-site parameter file (alpha must be 1 at every site)");
  stat_cmd->add_option("--steps", stat_o.steps, "homotopy steps")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  stat_cmd->add_option("--tol", stat_o.tol, "Newton residual tolerance")->capture_default_str();
  stat_cmd->add_option("--out", stat_o.out, "solution CSV path (stdout when omitted)");
  stat_cmd->add_option("--path", stat_o.path_out, "continuation path JSON path");
  stat_cmd->add_flag("--stability", stat_o.stability,
                     "also report linear stability of the solution");
  stat_cmd->add_option("--stability-out", stat_o.stability_out,
                       "stability JSON path (implies --stability)");
  stat_cmd->callback([&] { run_stationary(stat_o); });

  EnsembleOpts ens_o;
  CLI::App* ens_cmd = app.add_subcommand(
      "ensemble", "Random-start survey grouped by spatial period, or a class-threshold "
                  "search with --bracket-m");
  ens_cmd->add_option("--gmap", ens_o.gmap, kGmapHelp)->capture_default_str();
  ens_cmd->add_option("--n", ens_o.n, kNHelp)->required()->check(CLI::PositiveNumber);
  CLI::Option* ens_f = ens_cmd->add_option("--forcing", ens_o.forcing, "constant forcing");
  ens_cmd->add_option("--runs", ens_o.runs, "ensemble members")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  ens_cmd->add_option("--t-end", ens_o.t_end, "integration horizon per member")
      ->capture_default_str();
  ens_cmd->add_option("--seed", ens_o.seed, "RNG seed")->capture_default_str();
  ens_cmd->add_option("--jobs", ens_o.jobs, "worker threads (results identical for any value)")
      ->capture_default_str()
      ->check(CLI::Range(1, 256));
  CLI::Option* ens_m = ens_cmd->add_option(
      "--bracket-m", ens_o.bracket_m, "target spatial period for the threshold search");
  CLI::Option* ens_lo = ens_cmd->add_option("--f-lo", ens_o.f_lo, "lower end of the search");
  CLI::Option* ens_hi = ens_cmd->add_option("--f-hi", ens_o.f_hi, "upper end of the search");
  ens_m->needs(ens_lo)->needs(ens_hi);
  ens_lo->needs(ens_m);
  ens_hi->needs(ens_m);
  ens_cmd->add_option("--tol-f", ens_o.tol_f, "forcing resolution of the search")
      ->capture_default_str();
  ens_cmd->add_option("--out", ens_o.out, kOutHelp);
  ens_cmd->callback([&] { run_ensemble(ens_o, ens_f->count() > 0); });

  EnergyAuditOpts audit_o;
  CLI::App* audit_cmd = app.add_subcommand(
      "energy-audit", "Solver-error audit: energy-loss rates of one run of the "
                      "advection-only system, whose energy is exactly conserved");
  audit_cmd->add_option("--gmap", audit_o.gmap, kGmapHelp)->capture_default_str();
  audit_cmd->add_option("--n", audit_o.n, kNHelp)->required()->check(CLI::PositiveNumber);
  audit_cmd->add_option("--energy", audit_o.energy,
                        "energy of the default smooth start profile")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  audit_cmd->add_option("--solver", audit_o.solver, "rk4 or dopri5")
      ->capture_default_str()
      ->check(CLI::IsMember({"rk4", "dopri5"}));
  audit_cmd->add_option("--dt", audit_o.dt, "rk4 step size")->capture_default_str();
  audit_cmd->add_option("--rtol", audit_o.rtol, "adaptive relative tolerance")
      ->capture_default_str();
  audit_cmd->add_option("--atol", audit_o.atol, "adaptive absolute tolerance")
      ->capture_default_str();
  audit_cmd->add_option("--t1", audit_o.t1, "end time")->capture_default_str();
  audit_cmd->add_option("--x0", audit_o.x0_path,
                        "trajectory CSV whose last row replaces the default start");
  audit_cmd->add_option("--state", audit_o.state,
                        "inline initial state, comma-separated site values");
  audit_cmd->add_option("--out", audit_o.out, kOutHelp);
  audit_cmd->callback([&] { run_energy_audit(audit_o); });

  InvariantsOpts inv_o;
  CLI::App* inv_cmd = app.add_subcommand(
      "invariants", "Drift audit of the symmetric-system invariants on an unforced, "
                    "undamped run");
  inv_cmd->add_option("--gmap", inv_o.gmap, kGmapHelp)->required();
  inv_cmd->add_option("--n", inv_o.n, kNHelp)->required()->check(CLI::PositiveNumber);
  inv_cmd->add_option("--t1", inv_o.t1, "end time")->capture_default_str();
  inv_cmd->add_option("--rtol", inv_o.rtol, "adaptive relative tolerance")
      ->capture_default_str();
  inv_cmd->add_option("--atol", inv_o.atol, "adaptive absolute tolerance")
      ->capture_default_str();
  add_state_options(inv_cmd, inv_o.start);
  inv_cmd->add_option("--out", inv_o.out, kOutHelp);
  inv_cmd->callback([&] { run_invariants(inv_o); });

  ReduceOpts red_o;
  CLI::App* red_cmd = app.add_subcommand(
      "reduce", "Closed-form reductions of the unforced symmetric system (four-site "
                "polar form, six-site cross-product form)");
  red_cmd->add_option("--n", red_o.n, "lattice size (4 or 6)")
      ->required()
      ->check(CLI::IsMember({4, 6}));
  add_state_options(red_cmd, red_o.start);
  red_cmd->add_option("--t0", red_o.t0, "reconstruction start time")->capture_default_str();
  red_cmd->add_option("--t1", red_o.t1, "reconstruction end time")->capture_default_str();
  red_cmd->add_option("--dt-out", red_o.dt_out, "reconstruction output spacing")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  red_cmd->add_option("--out", red_o.out, "reconstructed trajectory CSV path");
  red_cmd->add_option("--summary-out", red_o.summary_out,
                      "reduction summary JSON path (stdout when omitted)");
  red_cmd->callback([&] { run_reduce(red_o); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace l96x
