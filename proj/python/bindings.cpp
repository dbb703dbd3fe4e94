#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <l96x/bifurcation.hpp>
#include <l96x/dynamics.hpp>
#include <l96x/equilibria.hpp>
#include <l96x/errors.hpp>
#include <l96x/experiments.hpp>
#include <l96x/gmap.hpp>
#include <l96x/spectral.hpp>

namespace py = pybind11;
using namespace l96x;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generalized Lorenz '96 toolkit: advection-map algebra, circulant "
            "spectra, closed-form bifurcation analysis, audited integration, "
            "stationary continuation, and attractor surveys.";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  // ---- advection maps -----------------------------------------------------
  py::class_<GMap>(m, "GMap")
      .def("localization", &GMap::localization)
      .def("min_sites", &GMap::min_sites)
      .def("is_zero", &GMap::is_zero)
      .def("terms",
           [](const GMap& g) {
             std::vector<std::tuple<int, int, double>> out;
             for (const Monomial& t : g.terms()) out.emplace_back(t.a, t.b, t.coeff);
             return out;
           },
           "monomial terms as (a, b, coefficient) triples")
      .def("__eq__", [](const GMap& a, const GMap& b) { return a == b; })
      .def("__add__", [](const GMap& a, const GMap& b) { return a + b; })
      .def("__sub__", [](const GMap& a, const GMap& b) { return a - b; })
      .def("__rmul__", [](const GMap& g, double s) { return s * g; })
      .def("__call__",
           [](const GMap& g, const Eigen::VectorXd& x) { return evaluate(g, x); },
           py::arg("x"), "apply the quadratic map to a lattice state")
      .def("__repr__", [](const GMap& g) {
        return "<GMap localization=" + std::to_string(g.localization()) + " terms=" +
               std::to_string(g.terms().size()) + ">";
      });

  m.def("parse_gmap", [](const std::string& text) { return parse_gmap(text).resolved; },
        py::arg("text"), "parse an advection-map expression such as 'G3' or 'G3 - ~G3'");
  m.def("standard_gmap", &standard_gmap, py::arg("index"), py::arg("reflected") = false,
        "catalogue map G<index>, optionally reflected");
  m.def("tilde", &tilde, py::arg("g"), "index-reversal conjugation of a map");
  m.def("basis", &basis, py::arg("k"), "energy-preserving basis at locality radius k");
  m.def("is_energy_preserving",
        [](const GMap& g) { return is_energy_preserving(g).preserving; }, py::arg("g"));
  m.def("linearization_kernel_dim", &linearization_kernel_dim, py::arg("k"),
        "dimension of the k-localized energy-preserving maps whose linearization "
        "vanishes at the constant state");

  // ---- spectra ------------------------------------------------------------
  py::class_<LaurentPoly>(m, "LaurentPoly")
      .def("reciprocal", &LaurentPoly::reciprocal)
      .def("__eq__", [](const LaurentPoly& a, const LaurentPoly& b) { return a == b; });

  m.def("laurent_of", &laurent_of, py::arg("g"),
        "symbol of the linearization at the constant state (F = 1 scaling)");
  m.def("eigenvalues", &eigenvalues, py::arg("p"), py::arg("n"), py::arg("forcing"),
        "discrete spectrum F*p(omega^j) - 1 of the linearization");

  // ---- bifurcation analysis ----------------------------------------------
  py::class_<HopfReport>(m, "HopfReport")
      .def_readonly("F1", &HopfReport::F1)
      .def_readonly("mode_k", &HopfReport::mode_k)
      .def_readonly("tau0", &HopfReport::tau0)
      .def_readonly("z1", &HopfReport::z1)
      .def_readonly("tie", &HopfReport::tie)
      .def_readonly("tie_mode", &HopfReport::tie_mode)
      .def_readonly("I1", &HopfReport::I1)
      .def_readonly("supercritical", &HopfReport::supercritical)
      .def_readonly("degenerate", &HopfReport::degenerate)
      .def_readonly("note", &HopfReport::note);

  py::class_<HopfHopfReport>(m, "HopfHopfReport")
      .def_readonly("mode_k", &HopfHopfReport::mode_k)
      .def_readonly("mode_l", &HopfHopfReport::mode_l)
      .def_readonly("F1", &HopfHopfReport::F1)
      .def_readonly("F2", &HopfHopfReport::F2)
      .def_readonly("alpha0", &HopfHopfReport::alpha0)
      .def_readonly("tau1", &HopfHopfReport::tau1)
      .def_readonly("tau2", &HopfHopfReport::tau2)
      .def_readonly("p", &HopfHopfReport::p)
      .def_readonly("theta", &HopfHopfReport::theta)
      .def_readonly("delta", &HopfHopfReport::delta)
      .def_readonly("F3_star", &HopfHopfReport::F3_star)
      .def_readonly("tie", &HopfHopfReport::tie)
      .def_readonly("simple_case", &HopfHopfReport::simple_case)
      .def_readonly("type_one", &HopfHopfReport::type_one)
      .def_readonly("degenerate", &HopfHopfReport::degenerate)
      .def_readonly("note", &HopfHopfReport::note);

  py::class_<WaveDiagnostics>(m, "WaveDiagnostics")
      .def_readonly("s1", &WaveDiagnostics::s1)
      .def_readonly("wavelength_sites", &WaveDiagnostics::wavelength_sites)
      .def_readonly("phase_velocity", &WaveDiagnostics::phase_velocity)
      .def_readonly("group_velocity", &WaveDiagnostics::group_velocity);

  m.def("first_hopf", [](const GMap& g, int n) { return first_hopf(laurent_of(g), n); },
        py::arg("g"), py::arg("n"), "first destabilizing forcing of the constant state");
  m.def("second_hopf", [](const GMap& g, int n) { return second_hopf(laurent_of(g), n); },
        py::arg("g"), py::arg("n"));
  m.def("first_lyapunov", &first_lyapunov, py::arg("g"), py::arg("n"),
        "first Hopf crossing with the closed-form cycle coefficient I1");
  m.def("hopf_hopf", &hopf_hopf, py::arg("g"), py::arg("n"),
        "double-Hopf interaction data and torus-branch tangent F3*");
  m.def("wave_diagnostics",
        [](const GMap& g, int n, double forcing) {
          return wave_diagnostics(laurent_of(g), n, forcing);
        },
        py::arg("g"), py::arg("n"), py::arg("forcing"),
        "wavelength and phase/group velocities of the critical mode");

  // ---- integration --------------------------------------------------------
  py::class_<SystemSpec>(m, "SystemSpec")
      .def_static("standard", &SystemSpec::standard, py::arg("g"), py::arg("n"),
                  py::arg("forcing"), "alpha = beta = 1, gamma = forcing at every site")
      .def_static("inviscid", &SystemSpec::inviscid, py::arg("g"), py::arg("n"),
                  "advection only: beta = gamma = 0")
      .def_readonly("n", &SystemSpec::n)
      .def_readonly("advection", &SystemSpec::advection)
      .def_readwrite("alpha", &SystemSpec::alpha)
      .def_readwrite("beta", &SystemSpec::beta)
      .def_readwrite("gamma", &SystemSpec::gamma);

  py::class_<SolverMeta>(m, "SolverMeta")
      .def_readonly("solver", &SolverMeta::solver)
      .def_readonly("steps", &SolverMeta::steps)
      .def_readonly("rejected", &SolverMeta::rejected)
      .def_readonly("rhs_evals", &SolverMeta::rhs_evals);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("meta", &Trajectory::meta)
      .def("n_sites", &Trajectory::n_sites)
      .def("initial", &Trajectory::initial)
      .def("last", &Trajectory::last);

  m.def("integrate_rk4", &integrate_rk4, py::arg("spec"), py::arg("x0"), py::arg("t0"),
        py::arg("t1"), py::arg("dt"), py::call_guard<py::gil_scoped_release>(),
        "classical fixed-step integration, output at every step");
  m.def("integrate_adaptive", &integrate_adaptive, py::arg("spec"), py::arg("x0"),
        py::arg("t0"), py::arg("t1"), py::arg("rtol") = 1e-8, py::arg("atol") = 1e-10,
        py::arg("dt_out") = 0.0, py::call_guard<py::gil_scoped_release>(),
        "embedded adaptive integration; dt_out = 0 outputs every accepted step");
  m.def("effective_forcing", &effective_forcing, py::arg("alpha"), py::arg("beta"),
        py::arg("gamma"), "forcing of the rescaled unit-coefficient system");

  // ---- conservation audits ------------------------------------------------
  py::class_<DriftEntry>(m, "DriftEntry")
      .def_readonly("name", &DriftEntry::name)
      .def_readonly("applicable", &DriftEntry::applicable)
      .def_readonly("note", &DriftEntry::note)
      .def_readonly("initial", &DriftEntry::initial)
      .def_readonly("max_drift", &DriftEntry::max_drift);

  py::class_<DriftReport>(m, "DriftReport")
      .def_readonly("entries", &DriftReport::entries)
      .def("max_drift", &DriftReport::max_drift);

  m.def("audit_symmetric",
        [](const Trajectory& traj, int n) { return audit(traj, symmetric_invariants(n)); },
        py::arg("traj"), py::arg("n"),
        "drift of the symmetric-system invariants along a trajectory");
  m.def("audit_energy",
        [](const Trajectory& traj) { return audit(traj, energy_invariant()); },
        py::arg("traj"));
  m.def("steady_energy_loss_rate",
        [](const Trajectory& traj) { return steady_loss_rate_percent(traj, total_energy()); },
        py::arg("traj"), "energy loss in percent per unit time over the settled half");

  // ---- stationary solutions ----------------------------------------------
  py::class_<StationaryProblem>(m, "StationaryProblem")
      .def_static("homogeneous", &StationaryProblem::homogeneous, py::arg("g"), py::arg("n"),
                  py::arg("forcing"))
      .def_readonly("n", &StationaryProblem::n)
      .def_readonly("b", &StationaryProblem::b)
      .def_readonly("f", &StationaryProblem::f)
      .def("residual", &StationaryProblem::residual, py::arg("x"))
      .def("jacobian", &StationaryProblem::jacobian, py::arg("x"));

  py::class_<NewtonResult>(m, "NewtonResult")
      .def_readonly("x", &NewtonResult::x)
      .def_readonly("iterations", &NewtonResult::iterations)
      .def_readonly("residual_norm", &NewtonResult::residual_norm)
      .def_readonly("residual_history", &NewtonResult::residual_history);

  py::class_<PathPoint>(m, "PathPoint")
      .def_readonly("t", &PathPoint::t)
      .def_readonly("x", &PathPoint::x)
      .def_readonly("residual_norm", &PathPoint::residual_norm)
      .def_readonly("newton_iterations", &PathPoint::newton_iterations);

  py::class_<ContinuationPath>(m, "ContinuationPath")
      .def_readonly("points", &ContinuationPath::points)
      .def_readonly("complete", &ContinuationPath::complete)
      .def_readonly("note", &ContinuationPath::note)
      .def("solution", &ContinuationPath::solution);

  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("spectral_abscissa", &StabilityReport::spectral_abscissa)
      .def_readonly("stable", &StabilityReport::stable)
      .def_readonly("indeterminate", &StabilityReport::indeterminate)
      .def_readonly("unstable_count", &StabilityReport::unstable_count);

  m.def("newton", &newton, py::arg("prob"), py::arg("x_init"), py::arg("tol") = 1e-12,
        py::arg("max_iter") = 50);
  m.def("homotopy_solve", &homotopy_solve, py::arg("prob"), py::arg("steps"),
        py::arg("newton_tol") = 1e-12, py::call_guard<py::gil_scoped_release>(),
        "continuation from the decoupled system to the full stationary problem");
  m.def("apriori_bound", &apriori_bound, py::arg("prob"));
  m.def("local_stability", &local_stability, py::arg("prob"), py::arg("x_star"));

  // ---- attractor surveys --------------------------------------------------
  py::class_<SpatialPeriod>(m, "SpatialPeriod")
      .def_readonly("period", &SpatialPeriod::period)
      .def_readonly("confident", &SpatialPeriod::confident);

  py::class_<AttractorClass>(m, "AttractorClass")
      .def_readonly("spatial_period", &AttractorClass::spatial_period)
      .def_readonly("confident", &AttractorClass::confident)
      .def_readonly("temporal_period", &AttractorClass::temporal_period)
      .def_readonly("member_count", &AttractorClass::member_count)
      .def_readonly("representative", &AttractorClass::representative);

  py::class_<EnsembleSummary>(m, "EnsembleSummary")
      .def_readonly("n", &EnsembleSummary::n)
      .def_readonly("forcing", &EnsembleSummary::forcing)
      .def_readonly("runs", &EnsembleSummary::runs)
      .def_readonly("seed", &EnsembleSummary::seed)
      .def_readonly("classes", &EnsembleSummary::classes)
      .def_readonly("unclassified", &EnsembleSummary::unclassified);

  py::class_<Table2Row>(m, "Table2Row")
      .def_readonly("n", &Table2Row::n)
      .def_readonly("f1", &Table2Row::f1)
      .def_readonly("m1", &Table2Row::m1)
      .def_readonly("f2", &Table2Row::f2)
      .def_readonly("m2", &Table2Row::m2)
      .def_readonly("f3_star", &Table2Row::f3_star)
      .def_readonly("f3_tilde", &Table2Row::f3_tilde);

  m.def("spatial_period", &spatial_period, py::arg("x"), py::arg("rel_tol") = 1e-3,
        "smallest divisor shift period of a settled snapshot");
  m.def("temporal_period", &temporal_period, py::arg("traj"), py::arg("site"),
        py::arg("window") = 50.0, py::arg("threshold") = 0.5,
        "dominant oscillation period, or None for constant/chaotic series");
  m.def("ensemble_member_start", &ensemble_member_start, py::arg("n"), py::arg("forcing"),
        py::arg("seed"), py::arg("index"));
  m.def("ensemble_search", &ensemble_search, py::arg("spec"), py::arg("forcing"),
        py::arg("runs"), py::arg("t_end") = 1000.0, py::arg("seed") = 0, py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "integrate an ensemble and group the settled states by spatial period");
  m.def("ns_bracket", &ns_bracket, py::arg("spec"), py::arg("m_target"), py::arg("f_lo"),
        py::arg("f_hi"), py::arg("tol_f") = 5e-4, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "forcing below which the attractor class of period m_target disappears");
  m.def("table2_row", &table2_row, py::arg("g"), py::arg("n"),
        "analytic coexistence-table columns for one lattice size");
}
