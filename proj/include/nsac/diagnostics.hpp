#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "nsac/dof_map.hpp"
#include "nsac/params.hpp"
#include "nsac/sparse.hpp"

namespace nsac {

/// One runtime check observed <= slack * constant.
struct BoundMonitor {
  std::string name;
  double constant_value = 0.0;
  double observed_value = 0.0;
  double slack = 1.0;
  bool passed = true;
};

/// Relative allowance for rounding in the comparison, on top of the slack.
inline constexpr double kMonitorRounding = 1e-12;

BoundMonitor make_monitor(std::string name, double constant, double observed, double slack = 1.0);

/// Explicit a-priori constants for one time step.
struct BoundConstants {
  double phi_l2 = 0.0;      // |Omega|^{1/2}
  double grad_phi = 0.0;    // C^{grad phi}
  double u = 0.0;           // C^u
  double strain = 0.0;      // K^{grad u}
  double u_grad_phi = 0.0;  // C^{u grad phi}
};

/// C^{grad phi} = |Omega|^{1/2} (gamma dt)^{-1/2} (1 + gamma dt / eta^2 (beta + 2))^{1/2}
/// C^u = dt |Omega|^{1/2} / rho_I + rho_S / rho_I ||u^n|| + sigma C^{grad phi} / (rho_I gamma)
/// K^{grad u} = sqrt(rho_I / mu_I) C^u / sqrt(dt)
/// C^{u grad phi} = sqrt(gamma rho_I / sigma) C^u / sqrt(dt)
BoundConstants bound_constants(const MixtureParams& params, double domain_area, double u_n_norm);

/// ||phi|| and ||grad phi|| against |Omega|^{1/2} and C^{grad phi}.
std::array<BoundMonitor, 2> check_phase_bounds(const Discretization& disc, const Vector& phi,
                                               const MixtureParams& params, double slack = 1.0);

/// ||u||, ||D(u)|| and ||u . grad phi|| against C^u, K^{grad u} and C^{u grad phi}.
std::array<BoundMonitor, 3> check_velocity_bounds(const Discretization& disc, const Vector& u, const Vector& phi,
                                                  const Vector& u_n, const MixtureParams& params,
                                                  double slack = 1.0);

/// max |phi| <= 1 + tol.
BoundMonitor check_max_principle(double max_abs_phi, double tol = 1e-6);

/// Geometric contraction of the fixed-point iterates, estimated from the
/// differences d_k between consecutive iterates.
struct ContractionEstimate {
  std::vector<double> ratios;  // d_k / d_{k-1}
  double geometric_fit = 0.0;  // exp of the least-squares slope of log d_k
  bool valid = false;          // false for degenerate or too short histories
  bool converging = false;     // valid and geometric_fit < 1
  std::string note;            // why the estimate is invalid or not converging
};

/// Differences below this end the estimate.
inline constexpr double kContractionFloor = 1e-15;

/// Needs at least three differences. The history is cut at the first
/// difference below kContractionFloor (it is kept as a last numerator but not
/// fitted). The fit reports a warning in `note` when K >= 1 - 1e-9.
ContractionEstimate estimate_contraction(std::span<const double> differences);

}  // namespace nsac
