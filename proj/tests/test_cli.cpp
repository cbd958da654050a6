#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nsac/config.hpp"
#include "nsac/output.hpp"
#include "nsac/runner.hpp"

using namespace nsac;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("nsac_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig small_run(Scenario scenario, const std::string& out) {
  RunConfig c = parse_config("", "",
                             {{"method", "fin"},
                              {"dt", scenario == Scenario::mms ? "1/1300" : "0.009/13"},
                              {"mesh_n", "4"},
                              {"t_final", scenario == Scenario::mms ? "2/1300" : "0.018/13"},
                              {"scenario", scenario == Scenario::mms ? "mms" : "quiescent"},
                              {"beta", "9/8"},
                              {"output_dir", out}});
  return c;
}

// Extracts the values following "SCALARS name" or "VECTORS name" in a legacy VTK file.
std::vector<double> vtk_array(const std::string& text, const std::string& header, std::size_t count) {
  std::istringstream in(text.substr(text.find(header)));
  std::string line;
  std::getline(in, line);
  if (header.rfind("SCALARS", 0) == 0) std::getline(in, line);  // LOOKUP_TABLE
  std::vector<double> v(count);
  for (auto& x : v) in >> x;
  return v;
}

}  // namespace

TEST(Config, PresetFin0Resolves) {
  const RunConfig c = parse_config("paper-table1-fin0", "", {});
  EXPECT_EQ(c.solver.method, AcMethod::newton);
  EXPECT_EQ(c.params.beta, 0.0);
  EXPECT_EQ(c.params.dt, 1.0 / 1300.0);
  EXPECT_EQ(c.mesh_n, 100);
  EXPECT_EQ(c.solver.t_final, 10.0 / 1300.0);
  EXPECT_EQ(c.scenario, Scenario::mms);
}

TEST(Config, EveryReferenceRowHasAPreset) {
  struct Row {
    const char* name;
    AcMethod method;
    double beta;
    double dt;
  };
  const Row rows[] = {{"paper-table1-fin0", AcMethod::newton, 0.0, 1.0 / 1300},
                      {"paper-table1-fin98", AcMethod::newton, 9.0 / 8, 1.0 / 1300},
                      {"paper-table1-fip0", AcMethod::picard, 0.0, 1.0 / 1300},
                      {"paper-table1-fip2", AcMethod::picard, 2.0, 1.0 / 1300},
                      {"paper-table1-sce", AcMethod::explicit_, 0.0, 1.0 / 1300},
                      {"paper-table1-sce-fine", AcMethod::explicit_, 0.0, 1.0 / 13000}};
  for (const Row& r : rows) {
    const RunConfig c = parse_config(r.name, "", {});
    EXPECT_EQ(c.solver.method, r.method) << r.name;
    EXPECT_EQ(c.params.beta, r.beta) << r.name;
    EXPECT_EQ(c.params.dt, r.dt) << r.name;
    EXPECT_EQ(c.mesh_n, 100) << r.name;
    EXPECT_EQ(c.params.rho_a, 3.0);
    EXPECT_EQ(c.params.eta, 0.1);
    EXPECT_EQ(c.solver.tol_fixed_point, 1e-9);
    EXPECT_NE(std::find(preset_names().begin(), preset_names().end(), r.name), preset_names().end());
  }
  EXPECT_NEAR(parse_config("paper-table1-sce-fine", "", {}).solver.t_final, 10.0 / 1300.0, 1e-18);
}

TEST(Config, OverridesEquivalentToFile) {
  const std::map<std::string, std::string> kv{{"method", "fip"}, {"beta", "2"}, {"dt", "1/2600"},
                                              {"mesh_n", "12"},   {"t_final", "0.01"}, {"sigma", "0.5"}};
  const auto dir = scratch("equiv");
  std::ofstream(dir / "empty.txt") << "";
  {
    std::ofstream f(dir / "full.txt");
    for (const auto& [k, v] : kv) f << k << " = " << v << "\n";
  }
  const RunConfig a = parse_config("", (dir / "empty.txt").string(), kv);
  const RunConfig b = parse_config("", (dir / "full.txt").string(), {});
  EXPECT_TRUE(a == b);
  // Flags win over the file.
  const RunConfig c = parse_config("", (dir / "full.txt").string(), {{"beta", "3"}});
  EXPECT_EQ(c.params.beta, 3.0);
}

TEST(Config, TypoNamesLine) {
  ConfigBuilder b;
  try {
    b.apply_text("betta=1\n", "typo.txt");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_NE(std::string(e.what()).find("typo.txt:1"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("betta"), std::string::npos);
  }
  try {
    b.apply_text("# comment\n\nbeta = 1\ndt = abc\n", "vals.txt");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(Config, MissingKeysAndUnknownPreset) {
  EXPECT_THROW(parse_config("", "", {{"method", "fin"}, {"dt", "0.001"}, {"mesh_n", "4"}}), ConfigError);
  EXPECT_THROW(parse_config("no-such-preset", "", {}), ConfigError);
  EXPECT_THROW(parse_config("", "/nonexistent/file.txt", {}), ConfigError);
  EXPECT_THROW(parse_config("paper-table1-fin0", "", {{"beta", "-1"}}), ConfigError);
  EXPECT_THROW(parse_config("paper-table1-fin0", "", {{"mesh_n", "0"}}), ConfigError);
}

TEST(Config, RealParsing) {
  EXPECT_EQ(parse_real("1/1300"), 1.0 / 1300.0);
  EXPECT_EQ(parse_real(" 9/8 "), 1.125);
  EXPECT_EQ(parse_real("1e-8"), 1e-8);
  EXPECT_THROW(parse_real("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_real("x"), std::invalid_argument);
  EXPECT_THROW(parse_real("1.5abc"), std::invalid_argument);
  const auto list = parse_real_list("0, 9/8,2");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[1], 1.125);
  EXPECT_EQ(format_17(0.1), "0.10000000000000001");
  EXPECT_EQ(format_exact(0.1), "0.1");
  EXPECT_EQ(format_17(std::nan("")), "nan");
}

TEST(Config, RoundTripThroughEcho) {
  RunConfig c = parse_config("quiescent-fip", "",
                             {{"mu_a", "10"}, {"beta_sweep", "0,1/3,2"}, {"gravity_y", "-0.5"},
                              {"monitor_strict", "true"}, {"snapshot_every", "3"}});
  std::ostringstream echo;
  write_config(echo, c);
  ConfigBuilder b;
  b.apply_text(echo.str(), "echo");
  const RunConfig back = b.finish();
  EXPECT_TRUE(back == c);
  EXPECT_EQ(back.params.beta, 2.0);
  EXPECT_EQ(back.beta_sweep[1], 1.0 / 3.0);
  EXPECT_EQ(back.solver.monitors.slack, 1.0 + 1e-8);
}

TEST(Output, ZeroStepCsv) {
  std::ostringstream out;
  write_step_csv(out, std::span<const StepReport>{});
  EXPECT_EQ(out.str(), std::string(kStepCsvHeader) + "\nsummary,nan,0,0,nan,nan,nan,nan,1\n");
}

TEST(Output, RunWritesDeterministicFiles) {
  const auto dir = scratch("run");
  RunConfig c = small_run(Scenario::mms, (dir / "a").string());
  c.snapshot_every = 1;
  std::ostringstream log;
  const RunOutcome a = execute_run(c, log);
  EXPECT_EQ(a.exit_code, exit_ok);
  c.output_dir = (dir / "b").string();
  execute_run(c, log);
  const std::string csv = slurp(dir / "a" / "steps.csv");
  EXPECT_EQ(csv, slurp(dir / "b" / "steps.csv"));
  EXPECT_EQ(csv.rfind(kStepCsvHeader, 0), 0u);
  EXPECT_NE(csv.find("\nsummary,"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(slurp(dir / "a" / "snapshot_000002.vtk"), slurp(dir / "b" / "snapshot_000002.vtk"));

  // The echo reproduces the configuration.
  ConfigBuilder b;
  b.apply_file((dir / "a" / "config.txt").string());
  RunConfig back = b.finish();
  back.output_dir = c.output_dir;
  EXPECT_TRUE(back == c);
}

TEST(Output, SnapshotOfManufacturedInitialState) {
  const auto dir = scratch("snap");
  RunConfig c = small_run(Scenario::mms, dir.string());
  const Discretization disc = make_discretization(c);
  const State s = make_initial_state(disc, c);
  std::ostringstream out;
  write_snapshot(out, disc, s);
  const std::string text = out.str();
  const std::size_t n = 9 * 9;
  EXPECT_NE(text.find("POINTS 81 double"), std::string::npos);
  for (double v : vtk_array(text, "SCALARS phi", n)) EXPECT_EQ(v, -1.0);
  for (double v : vtk_array(text, "VECTORS velocity", 3 * n)) EXPECT_EQ(v, 0.0);
  for (double v : vtk_array(text, "SCALARS pressure", n)) EXPECT_EQ(v, 0.0);
}

TEST(Output, SnapshotOfRestState) {
  RunConfig c = small_run(Scenario::quiescent, "unused");
  const Discretization disc = make_discretization(c);
  const State s = make_initial_state(disc, c);
  std::ostringstream out;
  write_snapshot(out, disc, s);
  const std::string text = out.str();
  const std::size_t n = 81;
  for (double v : vtk_array(text, "VECTORS velocity", 3 * n)) EXPECT_EQ(v, 0.0);
  for (double v : vtk_array(text, "SCALARS pressure", n)) EXPECT_EQ(v, 0.0);
  const auto phi = vtk_array(text, "SCALARS phi", n);
  EXPECT_GT(*std::max_element(phi.begin(), phi.end()), 0.5);
  EXPECT_LT(*std::min_element(phi.begin(), phi.end()), -0.5);
}

TEST(Sweep, SingleBetaMatchesPlainRun) {
  RunConfig c = small_run(Scenario::mms, "unused");
  c.beta_sweep = {9.0 / 8.0};
  c.sweep_methods = {AcMethod::newton};
  const auto rows = run_beta_sweep(c, 1);
  ASSERT_EQ(rows.size(), 1u);
  const Discretization disc = make_discretization(c);
  const SimulationResult sim = run_simulation(disc, c.solver, c.params, make_problem(c), make_initial_state(disc, c));
  long iters = 0;
  double h1 = 0.0;
  for (const auto& r : sim.reports) {
    iters += r.fixed_point_iterations;
    h1 = std::max(h1, r.errors->e_phi_h1);
  }
  EXPECT_EQ(rows[0].total_iters, iters);
  EXPECT_EQ(rows[0].e_phi_h1, h1);
  EXPECT_EQ(rows[0].status, "completed");
}

TEST(Sweep, ParallelKeepsOrderAndValues) {
  RunConfig c = small_run(Scenario::mms, "unused");
  c.beta_sweep = {0.0, 2.0};
  const auto serial = run_beta_sweep(c, 1);
  const auto parallel = run_beta_sweep(c, 3);
  ASSERT_EQ(serial.size(), 4u);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].method, parallel[i].method);
    EXPECT_EQ(serial[i].beta, parallel[i].beta);
    EXPECT_EQ(serial[i].total_iters, parallel[i].total_iters);
    EXPECT_EQ(serial[i].e_phi_h1, parallel[i].e_phi_h1);
  }
  std::ostringstream out;
  write_sweep_csv(out, serial);
  EXPECT_EQ(out.str().rfind(std::string(kSweepCsvHeader) + "\nfin,0,", 0), 0u);
}

TEST(Runner, FailedRunExitCode) {
  RunConfig c = small_run(Scenario::quiescent, scratch("fail").string());
  c.solver.max_fixed_point_iters = 1;
  std::ostringstream log;
  const RunOutcome r = execute_run(c, log);
  EXPECT_EQ(r.exit_code, exit_run_failed);
  EXPECT_EQ(r.simulation.status, RunStatus::non_convergence);
  EXPECT_NE(log.str().find("non_convergence"), std::string::npos);
}
