#pragma once

#include <iosfwd>
#include <vector>

#include "nsac/config.hpp"
#include "nsac/coupling.hpp"
#include "nsac/output.hpp"

namespace nsac {

Discretization make_discretization(const RunConfig& config);
Problem make_problem(const RunConfig& config);
State make_initial_state(const Discretization& disc, const RunConfig& config);

/// Process exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_run_failed = 1, exit_config_error = 2 };

struct RunOutcome {
  SimulationResult simulation;
  int exit_code = exit_ok;
};

/// Runs one simulation and writes into config.output_dir: config.txt (echo),
/// steps.csv and, when snapshot_every > 0, snapshot_NNNNNN.vtk for step 0 and
/// every snapshot_every steps. Progress lines go to `log`.
RunOutcome execute_run(const RunConfig& config, std::ostream& log);

/// One run per (method, beta) in config.sweep_methods x config.beta_sweep.
/// Runs are independent; `jobs` > 1 runs them on that many threads. Rows keep
/// the method-major, beta-minor order regardless of `jobs`.
std::vector<SweepRow> run_beta_sweep(const RunConfig& config, int jobs = 1);

/// run_beta_sweep plus config.txt and sweep.csv in config.output_dir.
int execute_sweep(const RunConfig& config, int jobs, std::ostream& log);

}  // namespace nsac
