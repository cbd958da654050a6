#pragma once

#include <functional>

#include "nsac/dof_map.hpp"
#include "nsac/params.hpp"
#include "nsac/sparse.hpp"
#include "nsac/state.hpp"

namespace nsac {

/// Inputs of one linearized Allen-Cahn solve inside the fixed-point loop.
struct AcStepInput {
  const Vector& phi_n;  // phase at t^n
  const Vector& phi_k;  // current iterate
  const Vector& u_k;    // current velocity iterate
  AcMethod method = AcMethod::newton;
  MixtureParams params;
  /// Source term of the strong form, added to the rhs with weight dt.
  std::function<double(Point2)> forcing;
  /// Prescribed gamma * d(phi)/dn on the boundary (weight dt). Empty means
  /// homogeneous Neumann.
  std::function<double(Point2 x, Point2 normal)> boundary_flux;
};

/// Galerkin system on the P2 phase space:
///   (c phi, psi) + dt (u_k . grad phi, psi) + gamma dt (grad phi, grad psi)
///     = (r, psi) + dt (forcing, psi) + dt <flux, psi>
/// with (c, r) from ac_linearization at every quadrature point.
SparseSystem assemble_ac(const Discretization& disc, const AcStepInput& input);

struct AcSolveResult {
  Vector phi;
  double max_abs_phi = 0.0;  // over nodal values
};

AcSolveResult solve_ac_step(const Discretization& disc, const AcStepInput& input, SolverWorkspace& workspace);

/// Largest absolute nodal value.
double max_abs(const Vector& v);

}  // namespace nsac
