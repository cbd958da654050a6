#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsac/diagnostics.hpp"
#include "nsac/dof_map.hpp"
#include "nsac/mms.hpp"
#include "nsac/params.hpp"
#include "nsac/state.hpp"

namespace nsac {

struct MonitorConfig {
  bool max_principle = true;   // skipped on forced problems
  bool phase_bounds = true;     // skipped on forced problems
  bool velocity_bounds = true;  // skipped on forced problems
  bool strict = false;          // a failed monitor aborts the step
  double max_principle_tol = 1e-6;
  double slack = 1.0;

  bool operator==(const MonitorConfig&) const = default;
};

struct SolverConfig {
  AcMethod method = AcMethod::newton;
  double tol_fixed_point = 1e-9;
  int max_fixed_point_iters = 100;
  double t_final = 0.0;
  MonitorConfig monitors;
  bool mms_enabled = false;

  /// Throws std::invalid_argument on a non-positive tolerance or cap.
  void validate() const;

  bool operator==(const SolverConfig&) const = default;
};

/// Sources and boundary data of a scenario. Empty members are zero.
struct Problem {
  std::function<double(double t, Point2 x)> ac_forcing;
  std::function<Vec2(double t, double dt, Point2 x)> ns_forcing;
  std::function<double(double t, Point2 x, Point2 normal)> ac_flux;
  std::function<Vec2(double t, Point2 x)> velocity_trace;
  std::function<Vec2(double phi)> body_force;
  std::optional<ManufacturedSolution> exact;

  bool forced() const { return static_cast<bool>(ac_forcing) || static_cast<bool>(ns_forcing); }
};

/// Which momentum residual the manufactured forcing cancels.
enum class MmsForcing {
  time_discrete,  // backward-difference inertia: exact fields solve each step
  continuous      // strong form; leaves the O(dt) inertia consistency error
};

/// Manufactured solution with its forcing, Neumann data and velocity trace.
Problem mms_problem(const MixtureParams& params, MmsForcing forcing = MmsForcing::time_discrete);
/// No forcing, no-slip walls, G = 0.
Problem quiescent_problem();

/// Interpolated manufactured fields at time t.
State mms_initial_state(const Discretization& disc, const ManufacturedSolution& mms, double t = 0.0);
/// Circle of radius `radius` centred at `center`: phi = tanh((r - radius) / (sqrt(2) eta)), u = 0.
State quiescent_initial_state(const Discretization& disc, const MixtureParams& params, double radius = 0.5,
                              Point2 center = {0.0, 0.0});

struct AdmissibilityReport {
  double dt_limit = 0.0;  // eta^2 / (13 gamma)
  bool dt_ok = false;     // dt < dt_limit
  double beta_threshold = 0.0;
  bool beta_max_principle_ok = false;
  std::vector<std::string> warnings;
};

/// Sufficient conditions for the maximum principle and the contraction of the
/// fixed-point loop. Never blocks a run.
AdmissibilityReport admissibility_check(const MixtureParams& params, AcMethod method);

/// Data of one pass of the fixed-point loop.
struct IterationRecord {
  int iteration = 0;                // 1-based
  double variation = 0.0;           // ||phi_{k+1} - phi_k|| + ||u_{k+1} - u_k||
  double contraction_norm = 0.0;    // ||phi_{k+1} - phi_k|| + ||grad(u_{k+1} - u_k)||
  double max_abs_phi = 0.0;
  double divergence_norm = 0.0;
  bool divergence_consistent = true;
  std::vector<BoundMonitor> monitors;
};

struct StepReport {
  std::size_t step_index = 0;  // 1-based
  double time = 0.0;           // t^{n+1}
  double dt = 0.0;
  int fixed_point_iterations = 0;
  std::size_t ns_solves = 0;
  std::size_t ac_solves = 0;
  std::vector<IterationRecord> iterations;
  ContractionEstimate contraction;
  double max_abs_phi = 0.0;           // over every iterate of the step
  double stabilization_residual = 0.0;  // beta gamma / eta^2 ||phi_{k+1} - phi_k|| at exit
  std::size_t clamped_density_points = 0;
  std::optional<ErrorNorms> errors;

  std::vector<double> variation_norms() const;
  std::vector<double> contraction_ratios() const { return contraction.ratios; }
  bool monitors_passed() const;
};

/// The fixed-point loop exceeded its iteration cap.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}
  const std::vector<double>& variation_history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// A monitor failed while monitors are strict.
class MonitorViolation : public std::runtime_error {
 public:
  MonitorViolation(const std::string& what, BoundMonitor monitor)
      : std::runtime_error(what), monitor_(std::move(monitor)) {}
  const BoundMonitor& monitor() const { return monitor_; }

 private:
  BoundMonitor monitor_;
};

struct StepResult {
  State state;
  StepReport report;
};

/// One time step of length params.dt from state_n: alternate the linearized
/// Allen-Cahn and Navier-Stokes solves until the variation drops below the
/// tolerance.
StepResult fixed_point_step(const Discretization& disc, const State& state_n, const SolverConfig& config,
                            const MixtureParams& params, const Problem& problem, SolverWorkspace& workspace);

enum class RunStatus { completed, non_convergence, monitor_violation, solver_failure };
std::string_view to_string(RunStatus s);

struct SimulationResult {
  std::vector<StepReport> reports;
  State final_state;
  RunStatus status = RunStatus::completed;
  std::string failure;
  std::vector<double> failed_variation_history;  // set on non-convergence
  std::size_t total_ns_solves = 0;               // global counter
  AdmissibilityReport admissibility;
};

using ReportSink = std::function<void(const StepReport&, const State&)>;

/// Steps t^n = t0 + n dt until config.t_final; when the interval is not a
/// whole number of steps the last one is shortened. A failing step stops the
/// run; the reports of the accepted steps are kept.
SimulationResult run_simulation(const Discretization& disc, const SolverConfig& config, const MixtureParams& params,
                                const Problem& problem, const State& initial, const ReportSink& sink = {});

}  // namespace nsac
