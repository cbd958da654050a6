// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// here; a criterion either holds at these values or it fails.
//
//   nsac_acceptance              criteria 1-8 at reduced mesh sizes
//   nsac_acceptance --extended   the 100 x 100 runs

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nsac/allen_cahn.hpp"
#include "nsac/coupling.hpp"
#include "nsac/mms.hpp"
#include "nsac/mms_oracle.hpp"
#include "nsac/navier_stokes.hpp"
#include "nsac/norms.hpp"
#include "oracles.hpp"

using namespace nsac;

namespace {

// Pinned tolerances.
constexpr double kC1PhiError = 1e-8;
constexpr double kC1Seconds = 120.0;
constexpr double kC2MinOrder = 1.8;
constexpr double kC2ReferenceEu = 6.74601e-07;
constexpr double kC2Factor = 3.0;
constexpr double kC3SceMin = 1e-3;
constexpr double kC3ImplicitMax = 1e-8;
constexpr double kC3MinGap = 1e5;
constexpr double kC3RefineLow = 5.0;   // "roughly one order" of improvement
constexpr double kC3RefineHigh = 20.0;
constexpr double kC4FipSpread = 0.30;
constexpr double kC5Tol = 1e-6;
constexpr double kC8Fd = 1e-5;
constexpr double kC8FdAc = 1e-6;
constexpr double kC8Assembly = 1e-12;
constexpr double kC8Skew = 1e-9;
constexpr double kC8Exact = 1e-12;

const Rectangle kSquare{-1.0, 1.0, -1.0, 1.0};

struct Run {
  std::string label;
  SimulationResult sim;
  double seconds = 0.0;
  double e_u = 0.0, e_phi = 0.0;
  long iters = 0;
};

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Run finish(std::string label, SimulationResult sim, double seconds) {
  Run r{std::move(label), std::move(sim), seconds};
  for (const auto& rep : r.sim.reports) {
    r.iters += rep.fixed_point_iterations;
    if (rep.errors) {
      r.e_u = std::max(r.e_u, rep.errors->e_u);
      r.e_phi = std::max(r.e_phi, rep.errors->e_phi);
    }
  }
  std::fprintf(stderr, "  %-28s %-10s steps=%zu iters=%ld E_u=%.5e E_phi=%.5e (%.1f s)\n", r.label.c_str(),
               std::string(to_string(r.sim.status)).c_str(), r.sim.reports.size(), r.iters, r.e_u, r.e_phi, seconds);
  return r;
}

Run mms_run(int n, AcMethod method, double beta, double dt, int steps) {
  const auto t0 = std::chrono::steady_clock::now();
  MixtureParams p;
  p.beta = beta;
  p.dt = dt;
  SolverConfig cfg;
  cfg.method = method;
  cfg.mms_enabled = true;
  cfg.t_final = steps * dt;
  const Discretization disc(build_uniform_mesh(kSquare, n));
  const ManufacturedSolution mms(p);
  SimulationResult sim = run_simulation(disc, cfg, p, mms_problem(p), mms_initial_state(disc, mms));
  std::ostringstream label;
  label << "mms " << n << "x" << n << " " << to_string(method) << " beta=" << beta << " dt=1/" << std::lround(1.0 / dt);
  return finish(label.str(), std::move(sim), elapsed(t0));
}

Run quiescent_run(AcMethod method, double beta, double mu) {
  const auto t0 = std::chrono::steady_clock::now();
  MixtureParams p;
  p.beta = beta;
  p.mu_a = p.mu_b = mu;
  p.dt = 0.9 * p.eta * p.eta / (13.0 * p.gamma);
  SolverConfig cfg;
  cfg.method = method;
  cfg.t_final = 20 * p.dt;
  const Discretization disc(build_uniform_mesh(kSquare, 32));
  SimulationResult sim = run_simulation(disc, cfg, p, quiescent_problem(), quiescent_initial_state(disc, p));
  std::ostringstream label;
  label << "quiescent " << to_string(method) << " beta=" << beta << " mu=" << mu;
  return finish(label.str(), std::move(sim), elapsed(t0));
}

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << id << ": " << detail << std::endl;
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4e", v);
  return b;
}

bool completed(const Run& r, std::size_t steps) {
  return r.sim.status == RunStatus::completed && r.sim.reports.size() == steps;
}

// K_hat < 1 on every step with a valid estimate; returns the number checked.
bool contraction_ok(const Run& r, int& checked, std::string& worst) {
  bool ok = true;
  for (const auto& rep : r.sim.reports) {
    if (!rep.contraction.valid) continue;
    ++checked;
    if (!(rep.contraction.geometric_fit < 1.0)) {
      ok = false;
      worst = r.label + " step " + std::to_string(rep.step_index) + " K=" + fmt(rep.contraction.geometric_fit);
    }
  }
  return ok;
}

double mean_khat(const Run& r) {
  double s = 0.0;
  int n = 0;
  for (const auto& rep : r.sim.reports)
    if (rep.contraction.valid) {
      s += rep.contraction.geometric_fit;
      ++n;
    }
  return n ? s / n : std::nan("");
}

void oracle_suite() {
  // (a) forcing against finite differences.
  const ManufacturedSolution mms;
  const fd::ForcingCheck fc = fd::verify_forcing(mms, 100, 20240601u, kC8FdAc, kC8Fd);
  const bool a = fc.passed && fc.max_rel_error_ns <= kC8Fd && fc.max_rel_error_ac <= kC8FdAc;

  // (b) assembled matrices against dense quadrature loops on 4 x 4.
  const Discretization disc(build_uniform_mesh(kSquare, 4));
  MixtureParams p;
  p.mu_a = 2.0;
  p.dt = 0.01;
  p.beta = 9.0 / 8.0;
  const Vector phi_n = interpolate_scalar(disc.phase, [](Point2 q) { return 0.7 * std::sin(q.x + 0.5 * q.y); });
  const Vector phi_k = interpolate_scalar(disc.phase, [](Point2 q) { return 0.7 * std::sin(q.x + 0.5 * q.y + 0.2); });
  const Vector u_n = interpolate_vector(disc.velocity, [](Point2 q) { return std::array<double, 2>{q.y * q.y, std::sin(q.x)}; });
  const Vector u_k = interpolate_vector(disc.velocity, [](Point2 q) { return std::array<double, 2>{std::cos(q.y), q.x * q.y}; });
  const Vector rho_n = density_field(phi_n, p);
  double ac_diff = 0.0;
  for (auto [m, l] : {std::pair{AcMethod::newton, oracle::Lin::newton}, std::pair{AcMethod::picard, oracle::Lin::picard},
                      std::pair{AcMethod::explicit_, oracle::Lin::explicit_}}) {
    const SparseSystem s = assemble_ac(disc, {phi_n, phi_k, u_k, m, p, {}, {}});
    const auto ref = oracle::allen_cahn(disc, phi_n, phi_k, u_k, l, p);
    ac_diff = std::max({ac_diff, oracle::max_entry_diff(s.matrix, ref.a), (s.rhs - ref.b).cwiseAbs().maxCoeff()});
  }
  const NsStepInput ns_in{u_n, rho_n, u_k, phi_k, phi_n, p, {}, {}, {}};
  const SparseSystem ns = assemble_ns(disc, ns_in);
  const auto ns_ref = oracle::navier_stokes(disc, u_n, rho_n, u_k, phi_k, phi_n, p);
  const double ns_diff = std::max(oracle::max_entry_diff(ns.matrix, ns_ref.a), (ns.rhs - ns_ref.b).cwiseAbs().maxCoeff());
  const bool b = ac_diff <= kC8Assembly && ns_diff <= kC8Assembly;

  // (c) convection + Temam block against sampled velocities vanishing on the boundary.
  const Vector zero = Vector::Zero(u_k.size());
  const SparseMatrix conv = ns.matrix - assemble_ns(disc, {u_n, rho_n, zero, phi_k, phi_n, p, {}, {}, {}}).matrix;
  std::mt19937 gen(99);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  double skew = 0.0;
  const auto nu = static_cast<Eigen::Index>(disc.velocity.dof_count);
  for (int trial = 0; trial < 50; ++trial) {
    Vector v = Vector::Zero(conv.rows());
    for (Eigen::Index i = 0; i < nu; ++i)
      if (!disc.velocity.dirichlet_mask[static_cast<std::size_t>(i)]) v[i] = d(gen);
    const Vector vu = v.head(nu);
    const double h1 = std::pow(l2_norm_vector(disc, vu), 2) + std::pow(h1_seminorm_vector(disc, vu), 2);
    skew = std::max(skew, std::abs(v.dot(conv * v)) / h1);
  }
  const bool c = skew <= kC8Skew;

  // (d) the manufactured velocity: divergence and boundary trace.
  std::uniform_real_distribution<double> t(0.0, 10.0);
  double div = 0.0, trace = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double time = t(gen), x = d(gen), y = d(gen);
    const MmsJet j = mms.jet(time, x, y);
    div = std::max(div, std::abs(j.u_x[0] + j.u_y[1]));
    for (Point2 q : {Point2{-1.0, y}, Point2{1.0, y}, Point2{x, -1.0}, Point2{x, 1.0}}) {
      const auto u = mms.eval(time, q.x, q.y).u;
      trace = std::max({trace, std::abs(u[0]), std::abs(u[1])});
    }
  }
  const bool dd = div <= kC8Exact && trace <= kC8Exact;

  report("C8 oracle suites", a && b && c && dd,
         "(a) FD forcing rel err AC " + fmt(fc.max_rel_error_ac) + " NS " + fmt(fc.max_rel_error_ns) + " (<= " +
             fmt(kC8Fd) + ")" + (a ? "" : " FAILED") + "; (b) AC " + fmt(ac_diff) + ", NS " + fmt(ns_diff) + " (<= " +
             fmt(kC8Assembly) + ")" + (b ? "" : " FAILED") + "; (c) skew " + fmt(skew) + " (<= " + fmt(kC8Skew) + ")" +
             (c ? "" : " FAILED") + "; (d) div " + fmt(div) + ", trace " + fmt(trace) + " (<= " + fmt(kC8Exact) + ")" +
             (dd ? "" : " FAILED"));
}

int extended() {
  std::fprintf(stderr, "extended runs (100 x 100)\n");
  const Run fin0 = mms_run(100, AcMethod::newton, 0.0, 1.0 / 1300, 10);
  const double ratio = fin0.e_u / kC2ReferenceEu;
  report("C2 (100x100) E_u near reference", completed(fin0, 10) && ratio <= kC2Factor && ratio >= 1.0 / kC2Factor,
         "E_u " + fmt(fin0.e_u) + " vs " + fmt(kC2ReferenceEu) + " (ratio " + fmt(ratio) + ", allowed factor " +
             fmt(kC2Factor) + "); E_phi " + fmt(fin0.e_phi) + ", " + std::to_string(fin0.iters) + " NS solves");
  report("C1 (100x100) E_phi", completed(fin0, 10) && fin0.e_phi <= kC1PhiError,
         "E_phi " + fmt(fin0.e_phi) + " (<= " + fmt(kC1PhiError) + ")");
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " failure(s)" << std::endl;
  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1 && std::strcmp(argv[1], "--extended") == 0) return extended();

  const double dt = 1.0 / 1300.0;
  std::fprintf(stderr, "manufactured runs (32 x 32, 10 steps)\n");
  std::map<std::string, Run> runs;
  const Run fin0 = mms_run(32, AcMethod::newton, 0.0, dt, 10);
  const Run fin98 = mms_run(32, AcMethod::newton, 9.0 / 8, dt, 10);
  const Run fin2 = mms_run(32, AcMethod::newton, 2.0, dt, 10);
  const Run fin4 = mms_run(32, AcMethod::newton, 4.0, dt, 10);
  const Run fip075 = mms_run(32, AcMethod::picard, 0.75, dt, 10);
  const Run fip98 = mms_run(32, AcMethod::picard, 9.0 / 8, dt, 10);
  const Run fip2 = mms_run(32, AcMethod::picard, 2.0, dt, 10);
  const Run sce = mms_run(32, AcMethod::explicit_, 0.0, dt, 10);
  const Run sce_fine = mms_run(32, AcMethod::explicit_, 0.0, dt / 10, 100);
  std::fprintf(stderr, "refinement run (64 x 64)\n");
  const Run fin0_64 = mms_run(64, AcMethod::newton, 0.0, dt, 10);
  std::fprintf(stderr, "quiescent interface (32 x 32, 20 steps)\n");
  const Run q_fin = quiescent_run(AcMethod::newton, 9.0 / 8, 1.0);
  const Run q_fip = quiescent_run(AcMethod::picard, 2.0, 1.0);
  const Run q_fin_mu10 = quiescent_run(AcMethod::newton, 9.0 / 8, 10.0);

  // 1
  report("C1 exact representability of phi", completed(fin0, 10) && fin0.e_phi <= kC1PhiError && fin0.seconds <= kC1Seconds,
         "32x32 FIN beta=0: E_phi " + fmt(fin0.e_phi) + " (<= " + fmt(kC1PhiError) + "), runtime " +
             fmt(fin0.seconds) + " s (<= " + fmt(kC1Seconds) + ")");

  // 2
  const double order = std::log2(fin0.e_u / fin0_64.e_u);
  report("C2 velocity accuracy trend", completed(fin0_64, 10) && order >= kC2MinOrder,
         "E_u 32x32 " + fmt(fin0.e_u) + ", 64x64 " + fmt(fin0_64.e_u) + ", observed order " + fmt(order) + " (>= " +
             fmt(kC2MinOrder) + "); 100x100 comparison runs with --extended");

  // 3
  const double implicit_worst = std::max(fin0.e_phi, fip2.e_phi);
  const double gap = sce.e_phi / implicit_worst;
  const double refine = sce.e_phi / sce_fine.e_phi;
  report("C3 implicit vs explicit gap",
         completed(sce, 10) && completed(sce_fine, 100) && completed(fip2, 10) && sce.e_phi >= kC3SceMin &&
             implicit_worst <= kC3ImplicitMax && gap >= kC3MinGap && refine >= kC3RefineLow && refine <= kC3RefineHigh,
         "SCE E_phi " + fmt(sce.e_phi) + " (>= " + fmt(kC3SceMin) + "), FIN/FIP E_phi " + fmt(implicit_worst) +
             " (<= " + fmt(kC3ImplicitMax) + "), gap " + fmt(gap) + "; SCE dt/10 E_phi " + fmt(sce_fine.e_phi) +
             ", improvement " + fmt(refine) + " (in [" + fmt(kC3RefineLow) + ", " + fmt(kC3RefineHigh) + "])");

  // 4
  const std::vector<const Run*> fin_sweep{&fin0, &fin98, &fin2, &fin4};
  bool monotone = true;
  std::string fin_counts, fip_counts;
  for (std::size_t i = 0; i < fin_sweep.size(); ++i) {
    monotone = monotone && completed(*fin_sweep[i], 10) && (i == 0 || fin_sweep[i]->iters >= fin_sweep[i - 1]->iters);
    fin_counts += (i ? "/" : "") + std::to_string(fin_sweep[i]->iters);
  }
  bool close = true;
  for (const Run* r : {&fip075, &fip98, &fip2}) {
    const double rel = std::abs(static_cast<double>(r->iters - fin98.iters)) / static_cast<double>(fin98.iters);
    close = close && completed(*r, 10) && rel <= kC4FipSpread;
    fip_counts += (fip_counts.empty() ? "" : "/") + std::to_string(r->iters);
  }
  report("C4 beta trend", monotone && close,
         "FIN iterations beta 0/9/8/2/4: " + fin_counts + (monotone ? " non-decreasing" : " NOT non-decreasing") +
             "; FIP beta 0.75/1.125/2: " + fip_counts + " vs FIN 9/8 " + std::to_string(fin98.iters) + " (within " +
             fmt(kC4FipSpread) + ")");

  // 5
  double max_phi = 0.0;
  std::size_t iterates = 0;
  for (const Run* r : {&q_fin, &q_fip})
    for (const auto& rep : r->sim.reports)
      for (const auto& it : rep.iterations) {
        max_phi = std::max(max_phi, it.max_abs_phi);
        ++iterates;
      }
  report("C5 maximum principle", completed(q_fin, 20) && completed(q_fip, 20) && max_phi <= 1.0 + kC5Tol,
         "quiescent FIN 9/8 and FIP 2, 20 steps, " + std::to_string(iterates) + " iterates: max|phi| - 1 = " +
             fmt(max_phi - 1.0) + " (<= " + fmt(kC5Tol) + ")");

  // 6
  std::map<std::string, std::pair<int, double>> seen;  // name -> (checks, worst observed/constant)
  bool all_pass = true;
  for (const Run* r : {&q_fin, &q_fip})
    for (const auto& rep : r->sim.reports)
      for (const auto& it : rep.iterations)
        for (const auto& m : it.monitors) {
          if (m.name == "max_abs_phi") continue;
          auto& s = seen[m.name];
          ++s.first;
          s.second = std::max(s.second, m.observed_value / m.constant_value);
          all_pass = all_pass && m.passed && m.slack == 1.0;
        }
  std::string detail;
  for (const auto& [name, s] : seen) detail += name + " " + std::to_string(s.first) + " checks, max ratio " + fmt(s.second) + "; ";
  report("C6 a-priori bounds", completed(q_fin, 20) && completed(q_fip, 20) && all_pass && seen.size() == 5,
         detail + "slack 1");

  // 7
  int checked = 0;
  std::string worst;
  bool contraction = true;
  for (const Run* r : {&fin0, &fin98, &fin2, &fin4, &fip075, &fip98, &fip2, &sce, &sce_fine, &fin0_64, &q_fin, &q_fip,
                       &q_fin_mu10})
    contraction = contraction_ok(*r, checked, worst) && contraction;
  const double k1 = mean_khat(q_fin), k10 = mean_khat(q_fin_mu10);
  report("C7 contraction", contraction && checked > 0 && completed(q_fin_mu10, 20) && k10 < k1,
         std::to_string(checked) + " converged solves with K_hat < 1" + (worst.empty() ? "" : " except " + worst) +
             "; quiescent mean K_hat mu=1 " + fmt(k1) + ", mu=10 " + fmt(k10));

  // 8
  oracle_suite();

  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " failure(s)" << std::endl;
  return failures ? 1 : 0;
}
