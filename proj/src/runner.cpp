#include "nsac/runner.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "nsac/navier_stokes.hpp"

namespace nsac {

namespace {

std::string snapshot_path(const RunConfig& config, std::size_t step) {
  char name[32];
  std::snprintf(name, sizeof name, "snapshot_%06zu.vtk", step);
  return (std::filesystem::path(config.output_dir) / name).string();
}

void prepare_output(const RunConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + config.output_dir + "': " + ec.message());
  const auto path = (std::filesystem::path(config.output_dir) / "config.txt").string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_config(out, config);
}

}  // namespace

Discretization make_discretization(const RunConfig& config) {
  return Discretization(build_uniform_mesh(ManufacturedSolution::domain(), config.mesh_n));
}

Problem make_problem(const RunConfig& config) {
  if (config.scenario == Scenario::mms) return mms_problem(config.params, config.mms_forcing);
  Problem p = quiescent_problem();
  if (config.gravity[0] != 0.0 || config.gravity[1] != 0.0) p.body_force = LinearBodyForce{config.gravity};
  return p;
}

State make_initial_state(const Discretization& disc, const RunConfig& config) {
  if (config.scenario == Scenario::mms) return mms_initial_state(disc, ManufacturedSolution(config.params));
  return quiescent_initial_state(disc, config.params);
}

RunOutcome execute_run(const RunConfig& config, std::ostream& log) {
  prepare_output(config);
  const Discretization disc = make_discretization(config);
  const Problem problem = make_problem(config);
  const State initial = make_initial_state(disc, config);
  if (config.snapshot_every > 0) emit_snapshot(snapshot_path(config, 0), disc, initial);

  for (const auto& w : admissibility_check(config.params, config.solver.method).warnings) log << "warning: " << w << '\n';
  const ReportSink sink = [&](const StepReport& r, const State& s) {
    log << "step " << r.step_index << " t=" << format_17(r.time) << " iters=" << r.fixed_point_iterations
        << " max|phi|=" << format_17(r.max_abs_phi);
    if (r.errors) log << " E_u=" << format_17(r.errors->e_u) << " E_phi=" << format_17(r.errors->e_phi);
    log << (r.monitors_passed() ? "" : " MONITOR FAILED") << '\n';
    if (r.clamped_density_points > 0)
      log << "warning: step " << r.step_index << " clamped sqrt(rho rho^n) at " << r.clamped_density_points
          << " quadrature points (negative density)\n";
    if (config.snapshot_every > 0 && r.step_index % static_cast<std::size_t>(config.snapshot_every) == 0)
      emit_snapshot(snapshot_path(config, r.step_index), disc, s);
  };

  RunOutcome outcome;
  outcome.simulation = run_simulation(disc, config.solver, config.params, problem, initial, sink);
  emit_step_csv((std::filesystem::path(config.output_dir) / "steps.csv").string(), outcome.simulation.reports);
  if (outcome.simulation.status != RunStatus::completed) {
    log << "run stopped (" << to_string(outcome.simulation.status) << "): " << outcome.simulation.failure << '\n';
    outcome.exit_code = exit_run_failed;
  }
  return outcome;
}

std::vector<SweepRow> run_beta_sweep(const RunConfig& config, int jobs) {
  if (config.beta_sweep.empty()) throw ConfigError("beta_sweep is empty", 0);
  std::vector<SweepRow> rows;
  for (AcMethod m : config.sweep_methods)
    for (double beta : config.beta_sweep) rows.push_back({m, beta, 0, 0.0, ""});

  const Discretization disc = make_discretization(config);
  auto run_one = [&](SweepRow& row) {
    RunConfig c = config;
    c.solver.method = row.method;
    c.params.beta = row.beta;
    try {
      const Problem problem = make_problem(c);
      const SimulationResult sim = run_simulation(disc, c.solver, c.params, problem, make_initial_state(disc, c));
      double h1 = sim.reports.empty() || !sim.reports.front().errors ? std::nan("") : 0.0;
      long iters = 0;
      for (const auto& r : sim.reports) {
        iters += r.fixed_point_iterations;
        if (r.errors) h1 = std::max(h1, r.errors->e_phi_h1);
      }
      row.total_iters = iters;
      row.e_phi_h1 = h1;
      row.status = std::string(to_string(sim.status));
    } catch (const std::exception& e) {
      row.status = "error";
      row.e_phi_h1 = std::nan("");
    }
  };

  if (jobs <= 1) {
    for (auto& row : rows) run_one(row);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) run_one(rows[i]);
      });
    for (auto& t : pool) t.join();
  }
  return rows;
}

int execute_sweep(const RunConfig& config, int jobs, std::ostream& log) {
  prepare_output(config);
  const auto rows = run_beta_sweep(config, jobs);
  const auto path = (std::filesystem::path(config.output_dir) / "sweep.csv").string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_sweep_csv(out, rows);
  for (const auto& r : rows)
    log << to_string(r.method) << " beta=" << format_17(r.beta) << " iters=" << r.total_iters << " "
        << r.status << '\n';
  return exit_ok;
}

}  // namespace nsac
