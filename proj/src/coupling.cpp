#include "nsac/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsac/allen_cahn.hpp"
#include "nsac/navier_stokes.hpp"
#include "nsac/norms.hpp"

namespace nsac {

void SolverConfig::validate() const {
  if (!(tol_fixed_point > 0.0)) throw std::invalid_argument("tol_fixed_point must be > 0");
  if (max_fixed_point_iters < 1) throw std::invalid_argument("max_fixed_point_iters must be >= 1");
  if (!(t_final >= 0.0)) throw std::invalid_argument("t_final must be >= 0");
  if (!(monitors.slack > 0.0)) throw std::invalid_argument("monitor slack must be > 0");
}

Problem mms_problem(const MixtureParams& params, MmsForcing forcing) {
  Problem pr;
  pr.exact.emplace(params);
  const ManufacturedSolution mms = *pr.exact;
  pr.ac_forcing = [mms](double t, Point2 x) { return mms.forcing_ac(t, x.x, x.y); };
  if (forcing == MmsForcing::continuous)
    pr.ns_forcing = [mms](double t, double, Point2 x) { return mms.forcing_ns(t, x.x, x.y); };
  else
    pr.ns_forcing = [mms](double t, double dt, Point2 x) { return mms.forcing_ns_discrete(t, dt, x.x, x.y); };
  pr.ac_flux = [mms](double t, Point2 x, Point2 n) { return mms.boundary_flux(t, x, n); };
  pr.velocity_trace = [mms](double t, Point2 x) { return mms.eval(t, x.x, x.y).u; };
  return pr;
}

Problem quiescent_problem() { return {}; }

State mms_initial_state(const Discretization& disc, const ManufacturedSolution& mms, double t) {
  State s;
  s.u = interpolate_vector(disc.velocity, [&](Point2 x) { return mms.eval(t, x.x, x.y).u; });
  s.p = interpolate_scalar(disc.pressure, [&](Point2 x) { return mms.eval(t, x.x, x.y).p; });
  s.phi = interpolate_scalar(disc.phase, [&](Point2 x) { return mms.eval(t, x.x, x.y).phi; });
  s.rho_prev = density_field(s.phi, mms.params());
  s.t = t;
  return s;
}

State quiescent_initial_state(const Discretization& disc, const MixtureParams& params, double radius, Point2 center) {
  const double width = std::sqrt(2.0) * params.eta;
  const Vector phi = interpolate_scalar(disc.phase, [&](Point2 x) {
    const double r = std::hypot(x.x - center.x, x.y - center.y);
    return std::tanh((r - radius) / width);
  });
  return make_state(disc, phi, params, 0.0);
}

AdmissibilityReport admissibility_check(const MixtureParams& params, AcMethod method) {
  AdmissibilityReport r;
  r.dt_limit = params.eta * params.eta / (13.0 * params.gamma);
  r.dt_ok = params.dt < r.dt_limit;
  r.beta_threshold = max_principle_beta(method);
  r.beta_max_principle_ok = params.beta >= r.beta_threshold;
  std::ostringstream msg;
  msg.precision(17);
  if (!r.dt_ok) {
    msg << "dt = " << params.dt << " is not below eta^2/(13 gamma) = " << r.dt_limit
        << "; contraction of the fixed-point loop is not guaranteed";
    r.warnings.push_back(msg.str());
    msg.str("");
  }
  if (!r.beta_max_principle_ok) {
    msg << "beta = " << params.beta << " is below " << r.beta_threshold << " for method " << to_string(method)
        << "; |phi| <= 1 is not guaranteed";
    r.warnings.push_back(msg.str());
  }
  return r;
}

std::vector<double> StepReport::variation_norms() const {
  std::vector<double> v;
  v.reserve(iterations.size());
  for (const auto& it : iterations) v.push_back(it.variation);
  return v;
}

bool StepReport::monitors_passed() const {
  for (const auto& it : iterations)
    for (const auto& m : it.monitors)
      if (!m.passed) return false;
  return true;
}

StepResult fixed_point_step(const Discretization& disc, const State& state_n, const SolverConfig& config,
                            const MixtureParams& params, const Problem& problem, SolverWorkspace& workspace) {
  if (!state_n.matches(disc)) throw std::invalid_argument("fixed_point_step: state does not match the discretization");
  const double t1 = state_n.t + params.dt;
  const MonitorConfig& mon = config.monitors;
  const bool bound_monitors = !problem.forced();

  std::function<double(Point2)> ac_forcing;
  std::function<double(Point2, Point2)> ac_flux;
  std::function<Vec2(Point2)> ns_forcing;
  BoundaryValue trace;
  if (problem.ac_forcing) ac_forcing = [&](Point2 x) { return problem.ac_forcing(t1, x); };
  if (problem.ac_flux) ac_flux = [&](Point2 x, Point2 n) { return problem.ac_flux(t1, x, n); };
  if (problem.ns_forcing) ns_forcing = [&](Point2 x) { return problem.ns_forcing(t1, params.dt, x); };
  if (problem.velocity_trace) trace = [&](Point2 x, int c) { return problem.velocity_trace(t1, x)[c]; };

  StepReport report;
  report.time = t1;
  report.dt = params.dt;
  const std::size_t ns_before = workspace.ns_solves, ac_before = workspace.ac_solves;

  Vector phi_k = state_n.phi, u_k = state_n.u, p_k = state_n.p;
  std::vector<double> history;
  bool converged = false;
  for (int k = 0; k < config.max_fixed_point_iters && !converged; ++k) {
    IterationRecord rec;
    rec.iteration = k + 1;

    const AcStepInput ac_in{state_n.phi, phi_k, u_k, config.method, params, ac_forcing, ac_flux};
    AcSolveResult ac = solve_ac_step(disc, ac_in, workspace);
    rec.max_abs_phi = ac.max_abs_phi;
    if (mon.max_principle && bound_monitors) rec.monitors.push_back(check_max_principle(ac.max_abs_phi, mon.max_principle_tol));

    const NsStepInput ns_in{state_n.u, state_n.rho_prev, u_k, ac.phi, state_n.phi, params,
                            problem.body_force, ns_forcing, trace};
    NsSolveResult ns = solve_ns_step(disc, ns_in, workspace);
    rec.divergence_norm = ns.divergence_norm;
    rec.divergence_consistent = ns.divergence_consistent;
    report.clamped_density_points += ns.clamped_density_points;

    const Vector dphi = ac.phi - phi_k;
    const Vector du = ns.u - u_k;
    const double dphi_l2 = l2_norm_scalar(disc, dphi);
    rec.variation = dphi_l2 + l2_norm_vector(disc, du);
    rec.contraction_norm = dphi_l2 + h1_seminorm_vector(disc, du);
    report.stabilization_residual = params.beta * params.gamma / (params.eta * params.eta) * dphi_l2;

    if (bound_monitors) {
      if (mon.phase_bounds)
        for (auto& m : check_phase_bounds(disc, ac.phi, params, mon.slack)) rec.monitors.push_back(std::move(m));
      if (mon.velocity_bounds)
        for (auto& m : check_velocity_bounds(disc, ns.u, ac.phi, state_n.u, params, mon.slack))
          rec.monitors.push_back(std::move(m));
    }
    report.max_abs_phi = std::max(report.max_abs_phi, rec.max_abs_phi);
    history.push_back(rec.variation);
    converged = rec.variation < config.tol_fixed_point;

    phi_k = std::move(ac.phi);
    u_k = std::move(ns.u);
    p_k = std::move(ns.p);
    const bool strict_failure =
        mon.strict && std::any_of(rec.monitors.begin(), rec.monitors.end(), [](const auto& m) { return !m.passed; });
    report.iterations.push_back(std::move(rec));
    if (strict_failure) {
      const auto& iters = report.iterations.back().monitors;
      const auto bad = *std::find_if(iters.begin(), iters.end(), [](const auto& m) { return !m.passed; });
      std::ostringstream msg;
      msg.precision(17);
      msg << "monitor " << bad.name << " failed at t = " << t1 << ", iteration " << k + 1 << ": observed "
          << bad.observed_value << " > " << bad.slack << " * " << bad.constant_value;
      throw MonitorViolation(msg.str(), bad);
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "fixed-point loop did not converge in " << config.max_fixed_point_iters << " iterations at t = " << t1
        << " (last variation " << history.back() << ")";
    throw NonConvergenceError(msg.str(), std::move(history));
  }

  report.fixed_point_iterations = static_cast<int>(report.iterations.size());
  report.ns_solves = workspace.ns_solves - ns_before;
  report.ac_solves = workspace.ac_solves - ac_before;
  std::vector<double> diffs;
  for (const auto& it : report.iterations) diffs.push_back(it.contraction_norm);
  report.contraction = estimate_contraction(diffs);

  StepResult result;
  result.state.u = std::move(u_k);
  result.state.p = std::move(p_k);
  result.state.phi = std::move(phi_k);
  result.state.rho_prev = density_field(result.state.phi, params);
  result.state.t = t1;
  if (problem.exact) report.errors = step_errors(disc, result.state.u, result.state.phi, t1, *problem.exact);
  result.report = std::move(report);
  return result;
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed:
      return "completed";
    case RunStatus::non_convergence:
      return "non_convergence";
    case RunStatus::monitor_violation:
      return "monitor_violation";
    case RunStatus::solver_failure:
      return "solver_failure";
  }
  return "unknown";
}

SimulationResult run_simulation(const Discretization& disc, const SolverConfig& config, const MixtureParams& params,
                                const Problem& problem, const State& initial, const ReportSink& sink) {
  config.validate();
  params.validate();
  SimulationResult result;
  result.admissibility = admissibility_check(params, config.method);
  result.final_state = initial;

  // Whole steps, plus a shortened one for a remainder longer than rounding.
  const double span = config.t_final - initial.t;
  std::size_t whole = 0;
  double remainder = 0.0;
  if (span > 0.0) {
    const double ratio = span / params.dt;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
      whole = static_cast<std::size_t>(nearest);
    } else {
      whole = static_cast<std::size_t>(std::floor(ratio));
      remainder = span - static_cast<double>(whole) * params.dt;
    }
  }
  const std::size_t steps = whole + (remainder > 0.0 ? 1 : 0);

  SolverWorkspace workspace;
  for (std::size_t n = 0; n < steps; ++n) {
    MixtureParams step_params = params;
    if (n == whole) step_params.dt = remainder;
    try {
      StepResult r = fixed_point_step(disc, result.final_state, config, step_params, problem, workspace);
      // Times are t0 + n dt rather than accumulated sums.
      r.state.t = n < whole ? initial.t + static_cast<double>(n + 1) * params.dt : config.t_final;
      r.report.time = r.state.t;
      r.report.step_index = n + 1;
      if (sink) sink(r.report, r.state);
      result.reports.push_back(std::move(r.report));
      result.final_state = std::move(r.state);
    } catch (const NonConvergenceError& e) {
      result.status = RunStatus::non_convergence;
      result.failure = e.what();
      result.failed_variation_history = e.variation_history();
      break;
    } catch (const MonitorViolation& e) {
      result.status = RunStatus::monitor_violation;
      result.failure = e.what();
      break;
    } catch (const std::runtime_error& e) {
      result.status = RunStatus::solver_failure;
      result.failure = e.what();
      break;
    }
  }
  result.total_ns_solves = workspace.ns_solves;
  return result;
}

}  // namespace nsac
