#pragma once

#include <cstddef>

#include "nsac/dof_map.hpp"
#include "nsac/params.hpp"
#include "nsac/sparse.hpp"

namespace nsac {

/// One time level: velocity (P2, component-major), pressure (P1), phase (P2)
/// and the density field rho(phi) of this level, kept as P2 nodal values for
/// the sqrt(rho^{n+1} rho^n) term of the next step.
struct State {
  Vector u;
  Vector p;
  Vector phi;
  Vector rho_prev;
  double t = 0.0;

  /// True when every vector has the size of its dof map.
  bool matches(const Discretization& disc) const;
};

/// Zero velocity and pressure, the given phase coefficients, rho from phi.
State make_state(const Discretization& disc, const Vector& phi, const MixtureParams& params, double t = 0.0);

/// Nodal values rho(phi_i).
Vector density_field(const Vector& phi, const MixtureParams& params);

/// Factorizations reused across solves of one run, plus solve counters.
struct SolverWorkspace {
  DirectSolver ac_solver;
  DirectSolver ns_solver;
  std::size_t ac_solves = 0;
  std::size_t ns_solves = 0;
};

}  // namespace nsac
