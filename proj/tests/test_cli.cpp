#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <initializer_list>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <l96x/cli.hpp>
#include <l96x/dynamics.hpp>
#include <l96x/gmap.hpp>
#include <l96x/io.hpp>

using namespace l96x;
namespace fs = std::filesystem;

namespace {

std::string path_of(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "l96x-cli-tests";
  fs::create_directories(dir);
  return (dir / name).string();
}

int cli(std::initializer_list<std::string> args) {
  return run_cli(std::vector<std::string>(args));
}

/// Redirects stdout and stderr into strings for the lifetime of the object.
struct StreamCapture {
  std::ostringstream out, err;
  std::streambuf* old_out = std::cout.rdbuf(out.rdbuf());
  std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
  ~StreamCapture() {
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
  }
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("usage errors and help exit codes") {
  StreamCapture capture;
  CHECK(cli({"--help"}) == 0);
  CHECK(capture.out.str().find("Subcommands") != std::string::npos);
  CHECK(cli({"simulate", "--help"}) == 0);
  CHECK(cli({}) == 2);                   // a subcommand is required
  CHECK(cli({"frobnicate"}) == 2);       // unknown subcommand
  CHECK(cli({"hopf", "--n", "36"}) == 2);  // missing --gmap
  CHECK(cli({"hopf", "--gmap", "G3", "--n", "36", "--bogus"}) == 2);
  CHECK(cli({"hopf", "--gmap", "G9", "--n", "36"}) == 2);  // no such map
  CHECK(cli({"hopf", "--gmap", "G3 % G5", "--n", "36"}) == 2);
  CHECK(cli({"basis", "--k", "0"}) == 2);
  CHECK(cli({"reduce", "--n", "5", "--state", "1,2,3,4,5"}) == 2);
  CHECK(cli({"ensemble", "--n", "12", "--bracket-m", "4"}) == 2);  // needs --f-lo/--f-hi
  CHECK(cli({"simulate", "--spec", "whatever.json", "--n", "8"}) == 2);  // exclusive
}

TEST_CASE("basis listings round-trip") {
  const std::string out = path_of("basis2.json");
  REQUIRE(cli({"basis", "--k", "2", "--out", out}) == 0);
  const std::string text = read_text_file(out);
  const BasisListing listing = basis_listing_from_json(text);
  CHECK(listing.k == 2);
  CHECK(listing.maps.size() == 6);
  for (const GMap& g : listing.maps) CHECK(g.localization() <= 2);
  CHECK(basis_listing_json(listing) == text);  // loader/emitter fixed point

  SUBCASE("stdout is the default sink") {
    StreamCapture capture;
    REQUIRE(cli({"basis", "--k", "1"}) == 0);
    CHECK(basis_listing_from_json(capture.out.str()).maps.size() == 2);
  }
}

TEST_CASE("hopf subcommand reports crossings") {
  const std::string out = path_of("hopf36.json");

  SUBCASE("first crossing with cycle type") {
    REQUIRE(cli({"hopf", "--gmap", "G3", "--n", "36", "--out", out}) == 0);
    const std::string text = read_text_file(out);
    const HopfReport report = hopf_from_json(text);
    CHECK(report.F1 == doctest::Approx(0.898198).epsilon(1e-5));
    CHECK(report.mode_k == 8);
    CHECK(!report.tie);
    REQUIRE(report.I1.has_value());
    CHECK(*report.I1 < 0.0);
    CHECK(report.supercritical);
    CHECK(hopf_json(report) == text);
  }
  SUBCASE("second crossing") {
    REQUIRE(cli({"hopf", "--gmap", "G3", "--n", "36", "--second", "--out", out}) == 0);
    const HopfReport report = hopf_from_json(read_text_file(out));
    CHECK(report.F1 == doctest::Approx(0.902474).epsilon(1e-5));
    CHECK(report.mode_k == 7);
  }
  SUBCASE("tied crossing still reports") {
    REQUIRE(cli({"hopf", "--gmap", "G3", "--n", "12", "--out", out}) == 0);
    const HopfReport report = hopf_from_json(read_text_file(out));
    CHECK(report.tie);
    CHECK(report.F1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(!report.I1.has_value());
  }
}

TEST_CASE("hopf-hopf subcommand: single report and sweep files") {
  SUBCASE("single lattice size") {
    const std::string out = path_of("hh36.json");
    REQUIRE(cli({"hopf-hopf", "--gmap", "G3", "--n", "36", "--out", out}) == 0);
    const HopfHopfReport report = hopf_hopf_from_json(read_text_file(out));
    CHECK(report.F1 == doctest::Approx(0.898198).epsilon(1e-5));
    CHECK(report.F2 == doctest::Approx(0.902474).epsilon(1e-5));
    CHECK(report.mode_k == 8);
    CHECK(report.mode_l == 7);
    CHECK(!report.tie);
    CHECK(report.F3_star == doctest::Approx(0.908946).epsilon(1e-5));
  }
  SUBCASE("size sweep with coexistence table") {
    const std::string sweep_path = path_of("sweep.csv");
    const std::string table_path = path_of("table2.csv");
    REQUIRE(cli({"hopf-hopf", "--gmap", "G3", "--sizes", "12,36", "--csv", sweep_path,
                 "--table2", table_path}) == 0);

    const std::vector<SweepRow> rows = sweep_from_csv(read_text_file(sweep_path));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 12);
    CHECK(rows[0].f1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rows[0].f3_star == rows[0].f1);  // tied crossings meet the tangent at F1
    CHECK(!rows[0].i1.has_value());
    CHECK(rows[1].n == 36);
    REQUIRE(rows[1].i1.has_value());
    CHECK(*rows[1].i1 < 0.0);

    const std::vector<Table2Row> table = table2_from_csv(read_text_file(table_path));
    REQUIRE(table.size() == 2);
    CHECK(table[1].f1 == doctest::Approx(0.898198).epsilon(1e-5));
    CHECK(table[1].m1 == 9);
    CHECK(table[1].f2 == doctest::Approx(0.902474).epsilon(1e-5));
    CHECK(table[1].m2 == 36);
    CHECK(table[1].f3_star == doctest::Approx(0.908946).epsilon(1e-5));
    CHECK(!table[1].f3_tilde.has_value());
  }
  SUBCASE("a size is required") {
    StreamCapture capture;
    CHECK(cli({"hopf-hopf", "--gmap", "G3"}) == 2);
  }
}

TEST_CASE("eigencurve subcommand writes curve, spectrum, and plot") {
  const std::string curve_path = path_of("curve.csv");
  const std::string discrete_path = path_of("discrete.csv");
  const std::string svg_path = path_of("curve.svg");
  REQUIRE(cli({"eigencurve", "--gmap", "G3", "--n", "12", "--samples", "64", "--out", curve_path,
               "--discrete-out", discrete_path, "--svg", svg_path}) == 0);
  const EigenCurve curve =
      eigencurve_from_csv(read_text_file(curve_path), read_text_file(discrete_path));
  CHECK(curve.curve.size() == 64);
  CHECK(curve.discrete.size() == 12);
  CHECK(read_text_file(svg_path).find("<svg") != std::string::npos);
}

TEST_CASE("simulate writes loadable trajectories") {
  const std::string traj_path = path_of("run.csv");
  const std::string spec_path = path_of("run_spec.json");
  REQUIRE(cli({"simulate", "--gmap", "G3", "--n", "8", "--forcing", "1", "--solver", "rk4",
               "--dt", "0.05", "--t1", "2", "--seed", "3", "--out", traj_path, "--emit-spec",
               spec_path}) == 0);
  const Trajectory traj = trajectory_from_csv(read_text_file(traj_path));
  CHECK(traj.n_sites() == 8);
  CHECK(traj.times.size() == 41);
  CHECK(traj.times.back() == doctest::Approx(2.0).epsilon(1e-12));

  SUBCASE("the emitted spec is the configured system") {
    const LoadedSpec loaded = system_spec_from_json(read_text_file(spec_path));
    CHECK(loaded.spec.n == 8);
    CHECK(loaded.advection_source == "G3");
    CHECK(loaded.spec.advection == parse_gmap("G3").resolved);
    CHECK(loaded.spec.gamma.isConstant(1.0));

    const std::string rerun_path = path_of("rerun.csv");
    REQUIRE(cli({"simulate", "--spec", spec_path, "--solver", "rk4", "--dt", "0.05", "--t1",
                 "2", "--seed", "3", "--out", rerun_path}) == 0);
    CHECK(read_text_file(rerun_path) == read_text_file(traj_path));
  }
  SUBCASE("seeded starts are reproducible") {
    const std::string again = path_of("run_again.csv");
    REQUIRE(cli({"simulate", "--gmap", "G3", "--n", "8", "--forcing", "1", "--solver", "rk4",
                 "--dt", "0.05", "--t1", "2", "--seed", "3", "--out", again}) == 0);
    CHECK(read_text_file(again) == read_text_file(traj_path));

    const std::string other = path_of("run_member.csv");
    REQUIRE(cli({"simulate", "--gmap", "G3", "--n", "8", "--forcing", "1", "--solver", "rk4",
                 "--dt", "0.05", "--t1", "2", "--seed", "3", "--member", "1", "--out",
                 other}) == 0);
    CHECK(read_text_file(other) != read_text_file(traj_path));
  }
  SUBCASE("a run chains from the last row of a previous run") {
    const std::string next_path = path_of("run_next.csv");
    REQUIRE(cli({"simulate", "--gmap", "G3", "--n", "8", "--forcing", "1", "--solver", "rk4",
                 "--dt", "0.05", "--t0", "2", "--t1", "3", "--x0", traj_path, "--out",
                 next_path}) == 0);
    const Trajectory next = trajectory_from_csv(read_text_file(next_path));
    CHECK(next.times.front() == 2.0);
    CHECK((next.initial() - traj.last()).norm() == 0.0);
  }
  SUBCASE("adaptive output grid") {
    const std::string grid_path = path_of("run_grid.csv");
    REQUIRE(cli({"simulate", "--gmap", "G3", "--n", "8", "--forcing", "1", "--dt-out", "0.5",
                 "--t1", "2", "--out", grid_path}) == 0);
    const Trajectory grid = trajectory_from_csv(read_text_file(grid_path));
    REQUIRE(grid.times.size() == 5);
    CHECK(grid.times[1] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("inline initial state") {
    const std::string inline_path = path_of("run_inline.csv");
    REQUIRE(cli({"simulate", "--gmap", "G3", "--n", "4", "--forcing", "0.5", "--solver", "rk4",
                 "--dt", "0.1", "--t1", "0.2", "--state", "1,0,-0.5,0.25", "--out",
                 inline_path}) == 0);
    const Trajectory t = trajectory_from_csv(read_text_file(inline_path));
    CHECK(t.initial()[0] == 1.0);
    CHECK(t.initial()[3] == 0.25);
  }
  SUBCASE("initial-state failures map to exit codes") {
    CHECK(cli({"simulate", "--gmap", "G3", "--n", "12", "--x0", traj_path}) == 1);
    CHECK(cli({"simulate", "--gmap", "G3", "--n", "8", "--state", "1,2,3"}) == 1);
    CHECK(cli({"simulate", "--gmap", "G3", "--n", "3", "--state", "1,zz,3"}) == 2);
    CHECK(cli({"simulate", "--gmap", "G3", "--n", "8", "--x0", path_of("missing.csv")}) == 1);
  }
}

TEST_CASE("hovmoeller subcommand rasterizes a trajectory file") {
  const std::string traj_path = path_of("hov_run.csv");
  REQUIRE(cli({"simulate", "--gmap", "G3", "--n", "8", "--forcing", "2", "--solver", "rk4",
               "--dt", "0.02", "--t1", "10", "--seed", "5", "--out", traj_path}) == 0);
  const std::string grid_path = path_of("hov.csv");
  const std::string svg_path = path_of("hov.svg");
  REQUIRE(cli({"hovmoeller", "--in", traj_path, "--t0", "5", "--t1", "10", "--refine", "3",
               "--out", grid_path, "--svg", svg_path}) == 0);
  const HovmoellerGrid grid = hovmoeller_from_csv(read_text_file(grid_path));
  CHECK(grid.positions.size() == 24);
  CHECK(grid.times.front() >= 5.0);
  CHECK(grid.times.back() <= 10.0);
  const std::string svg = read_text_file(svg_path);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<rect") != std::string::npos);

  SUBCASE("window and file failures") {
    CHECK(cli({"hovmoeller", "--in", traj_path, "--t0", "9", "--t1", "5"}) == 1);
    CHECK(cli({"hovmoeller", "--in", path_of("nope.csv"), "--t0", "0", "--t1", "1"}) == 1);
    const std::string junk = path_of("junk.csv");
    write_text_file(junk, "not,a\ntrajectory,file\n");
    CHECK(cli({"hovmoeller", "--in", junk, "--t0", "0", "--t1", "1"}) == 2);
  }
}

TEST_CASE("stationary subcommand solves and reports stability") {
  const std::string sol_path = path_of("stat.csv");
  const std::string cont_path = path_of("stat_path.json");
  const std::string stab_path = path_of("stat_stab.json");

  SUBCASE("homogeneous forcing above the stability edge") {
    REQUIRE(cli({"stationary", "--gmap", "G3", "--n", "8", "--forcing", "1.5", "--steps", "6",
                 "--out", sol_path, "--path", cont_path, "--stability-out", stab_path}) == 0);
    const StationaryTable table = stationary_from_csv(read_text_file(sol_path));
    REQUIRE(table.x.size() == 8);
    CHECK(table.f.isConstant(1.5));
    CHECK((table.x.array() - 1.5).abs().maxCoeff() < 1e-10);

    const ContinuationPath path = path_from_json(read_text_file(cont_path));
    CHECK(path.complete);
    CHECK(path.points.back().t == 1.0);

    const StabilityReport stability = stability_from_json(read_text_file(stab_path));
    CHECK(!stability.stable);
    CHECK(stability.unstable_count > 0);
  }
  SUBCASE("weak forcing is stable") {
    REQUIRE(cli({"stationary", "--gmap", "G3", "--n", "8", "--forcing", "0.5", "--steps", "6",
                 "--out", sol_path, "--stability-out", stab_path}) == 0);
    CHECK(stability_from_json(read_text_file(stab_path)).stable);
  }
  SUBCASE("per-site parameters") {
    const std::string params = path_of("stat_params.csv");
    std::string text = "alpha,beta,gamma\n";
    for (int i = 0; i < 8; ++i) text += i < 4 ? "1,1,2\n" : "1,1.5,1\n";
    write_text_file(params, text);
    REQUIRE(cli({"stationary", "--gmap", "G3", "--n", "8", "--params", params, "--out",
                 sol_path}) == 0);
    const StationaryTable table = stationary_from_csv(read_text_file(sol_path));
    CHECK(table.f.head(4).isConstant(2.0));
    CHECK(table.x.allFinite());

    std::string scaled = "alpha,beta,gamma\n";
    for (int i = 0; i < 8; ++i) scaled += "2,1,1\n";
    write_text_file(params, scaled);
    CHECK(cli({"stationary", "--gmap", "G3", "--n", "8", "--params", params}) == 1);

    write_text_file(params, "alpha,beta,gamma\n1,1,1\n");
    CHECK(cli({"stationary", "--gmap", "G3", "--n", "8", "--params", params}) == 2);
  }
}

TEST_CASE("ensemble subcommand groups members and honors --jobs") {
  const std::string out1 = path_of("ens1.json");
  const std::string out2 = path_of("ens2.json");
  REQUIRE(cli({"ensemble", "--gmap", "G3", "--n", "12", "--forcing", "1.5", "--runs", "10",
               "--t-end", "300", "--seed", "11", "--jobs", "2", "--out", out1}) == 0);
  const EnsembleSummary summary = ensemble_from_json(read_text_file(out1));
  CHECK(summary.runs == 10);
  CHECK(summary.seed == 11);
  CHECK(summary.unclassified == 0);
  int members = summary.unclassified;
  for (const AttractorClass& c : summary.classes) {
    CHECK((c.spatial_period == 4 || c.spatial_period == 6));
    members += c.member_count;
  }
  CHECK(members == 10);

  REQUIRE(cli({"ensemble", "--gmap", "G3", "--n", "12", "--forcing", "1.5", "--runs", "10",
               "--t-end", "300", "--seed", "11", "--jobs", "1", "--out", out2}) == 0);
  CHECK(read_text_file(out2) == read_text_file(out1));
}

TEST_CASE("ensemble threshold search maps outcomes to exit codes" * doctest::timeout(300)) {
  SUBCASE("a persisting class is a domain error") {
    StreamCapture capture;
    CHECK(cli({"ensemble", "--gmap", "G3", "--n", "12", "--bracket-m", "4", "--f-lo", "1.40",
               "--f-hi", "1.41"}) == 1);
    CHECK(capture.err.str().find("persisted") != std::string::npos);
  }
  SUBCASE("the first coexistence window has a threshold") {
    const std::string out = path_of("bracket36.json");
    REQUIRE(cli({"ensemble", "--gmap", "G3", "--n", "36", "--bracket-m", "36", "--f-lo", "0.9",
                 "--f-hi", "1.0", "--seed", "0", "--out", out}) == 0);
    const BracketResult result = bracket_from_json(read_text_file(out));
    CHECK(result.n == 36);
    CHECK(result.m_target == 36);
    CHECK(result.f3_tilde == doctest::Approx(0.90775).epsilon(1e-4));
  }
}

TEST_CASE("energy-audit reports loss rates for both solvers") {
  const std::string out = path_of("audit.json");

  SUBCASE("fixed-step rk4 at the documented step") {
    REQUIRE(cli({"energy-audit", "--gmap", "G3", "--n", "36", "--solver", "rk4", "--dt",
                 "0.05", "--t1", "100", "--out", out}) == 0);
    const EnergyAudit audit = energy_audit_from_json(read_text_file(out));
    CHECK(audit.solver == "rk4");
    CHECK(audit.steps == 2000);
    CHECK(audit.rhs_evals == 8000);
    CHECK(audit.steady_loss_rate > 0.04 / 3);
    CHECK(audit.steady_loss_rate < 0.04 * 3);
  }
  SUBCASE("tight adaptive tolerance conserves energy to reporting precision") {
    REQUIRE(cli({"energy-audit", "--gmap", "G3", "--n", "36", "--solver", "dopri5", "--rtol",
                 "1e-10", "--atol", "1e-12", "--t1", "100", "--out", out}) == 0);
    const EnergyAudit audit = energy_audit_from_json(read_text_file(out));
    CHECK(audit.solver == "dopri5");
    CHECK(audit.rejected >= 0);
    CHECK(std::abs(audit.steady_loss_rate) < 2e-4);
    CHECK(std::abs(audit.endpoint_loss_rate) < 2e-4);
  }
}

TEST_CASE("invariants subcommand audits the symmetric system") {
  const std::string out = path_of("drift.json");
  REQUIRE(cli({"invariants", "--gmap", "G3-~G3", "--n", "6", "--t1", "100", "--out", out}) == 0);
  const std::string text = read_text_file(out);
  const DriftReport report = drift_report_from_json(text);
  CHECK(report.max_drift() < 1e-8);
  CHECK(report.entries.size() >= 7);
  for (const DriftEntry& e : report.entries) CHECK(e.applicable);
  CHECK(drift_report_json(report) == text);

  SUBCASE("reproducible under the seed") {
    const std::string again = path_of("drift_again.json");
    REQUIRE(cli({"invariants", "--gmap", "G3-~G3", "--n", "6", "--t1", "100", "--out",
                 again}) == 0);
    CHECK(read_text_file(again) == text);
  }
  SUBCASE("four sites flag the inapplicable quantities") {
    const std::string four = path_of("drift4.json");
    REQUIRE(cli({"invariants", "--gmap", "G3-~G3", "--n", "4", "--t1", "50", "--out",
                 four}) == 0);
    const DriftReport r4 = drift_report_from_json(read_text_file(four));
    CHECK(r4.max_drift() < 1e-8);
    bool flagged = false;
    for (const DriftEntry& e : r4.entries)
      if (!e.applicable) {
        flagged = true;
        CHECK(!e.note.empty());
      }
    CHECK(flagged);
  }
}

TEST_CASE("reduce subcommand emits closed-form summaries and reconstructions") {
  SUBCASE("four-site polar form") {
    const std::string summary_path = path_of("red4.json");
    const std::string traj_path = path_of("red4.csv");
    REQUIRE(cli({"reduce", "--n", "4", "--state", "1,0.5,-0.25,0.75", "--t1", "5", "--dt-out",
                 "0.1", "--summary-out", summary_path, "--out", traj_path}) == 0);
    const PolarReduction r = polar_reduction_from_json(read_text_file(summary_path));
    CHECK(r.rho0 == doctest::Approx(std::hypot(1.0, -0.25)).epsilon(1e-12));
    CHECK(r.rho1 == doctest::Approx(std::hypot(0.5, 0.75)).epsilon(1e-12));
    CHECK(!r.degenerate);

    const Trajectory traj = trajectory_from_csv(read_text_file(traj_path));
    REQUIRE(traj.times.size() == 51);
    CHECK((traj.initial() - Eigen::Vector4d(1, 0.5, -0.25, 0.75)).norm() < 1e-12);
    for (std::size_t row = 0; row < traj.times.size(); ++row) {
      const Eigen::VectorXd x = traj.state(row);
      CHECK(std::hypot(x[0], x[2]) == doctest::Approx(r.rho0).epsilon(1e-9));
      CHECK(std::hypot(x[1], x[3]) == doctest::Approx(r.rho1).epsilon(1e-9));
    }
  }
  SUBCASE("degenerate polar data is flagged") {
    const std::string summary_path = path_of("red4_deg.json");
    REQUIRE(cli({"reduce", "--n", "4", "--state", "0,1,0,1", "--summary-out",
                 summary_path}) == 0);
    CHECK(polar_reduction_from_json(read_text_file(summary_path)).degenerate);
  }
  SUBCASE("six-site cross-product form") {
    const std::string summary_path = path_of("red6.json");
    const std::string traj_path = path_of("red6.csv");
    REQUIRE(cli({"reduce", "--n", "6", "--state", "1,0,2,0,1,-1", "--t1", "3", "--dt-out",
                 "0.25", "--summary-out", summary_path, "--out", traj_path}) == 0);
    const CrossProductReduction r = cross_reduction_from_json(read_text_file(summary_path));
    CHECK(r.c.isConstant(0.5));

    const Trajectory traj = trajectory_from_csv(read_text_file(traj_path));
    const double y_norm = r.y0.norm();
    for (std::size_t row = 0; row < traj.times.size(); ++row) {
      const Eigen::VectorXd x = traj.state(row);
      const Eigen::Vector3d y(2.0 * (x[0] - r.c[0]), -2.0 * (x[1] - r.c[1]),
                              2.0 * (x[2] - r.c[2]));
      CHECK(y.norm() == doctest::Approx(y_norm).epsilon(1e-9));
    }
  }
  SUBCASE("input validation") {
    StreamCapture capture;
    CHECK(cli({"reduce", "--n", "4"}) == 2);                           // no state
    CHECK(cli({"reduce", "--n", "6", "--state", "1,2,3,4"}) == 1);     // wrong length
    CHECK(cli({"reduce", "--n", "4", "--state", "1,2,3,4", "--t1", "0"}) == 1);
  }
}

TEST_CASE("report schemas reject malformed documents") {
  CHECK_THROWS_AS(basis_listing_from_json("{\"k\":2}"), ParseError);
  CHECK_THROWS_AS(drift_report_from_json("not json"), ParseError);
  CHECK_THROWS_AS(stability_from_json("{\"stable\":true}"), ParseError);
  CHECK_THROWS_AS(energy_audit_from_json("[]"), ParseError);
  CHECK_THROWS_AS(bracket_from_json("{\"n\":1}"), ParseError);
  CHECK_THROWS_AS(polar_reduction_from_json("{}"), ParseError);
  CHECK_THROWS_AS(cross_reduction_from_json("{\"c\":[1,2],\"y0\":[1,2,3]}"), ParseError);

  SUBCASE("bracket results survive large seeds") {
    BracketResult result;
    result.n = 36;
    result.m_target = 36;
    result.f_lo = 0.9;
    result.f_hi = 1.0;
    result.tol_f = 5e-4;
    result.seed = (std::uint64_t{1} << 63) + 7;
    result.f3_tilde = 0.90775;
    const BracketResult loaded = bracket_from_json(bracket_json(result));
    CHECK(loaded.seed == result.seed);
    CHECK(loaded.f3_tilde == result.f3_tilde);
    CHECK(loaded.tol_f == result.tol_f);
  }
}

TEST_SUITE_END();
