#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>

#include "nsac/dof_map.hpp"
#include "nsac/params.hpp"
#include "nsac/sparse.hpp"
#include "nsac/state.hpp"

namespace nsac {

/// Raised when a coefficient of the momentum operator is not admissible
/// (non-positive viscosity at a quadrature point).
class AssemblyError : public std::runtime_error {
 public:
  AssemblyError(const std::string& what, Point2 where) : std::runtime_error(what), where_(where) {}
  Point2 where() const { return where_; }

 private:
  Point2 where_;
};

/// Linear body force G(phi) = phi * g.
struct LinearBodyForce {
  Vec2 g{0.0, 0.0};
  Vec2 operator()(double phi) const { return {phi * g[0], phi * g[1]}; }
};

/// Inputs of one linearized momentum/continuity solve. phi_k1 must be the
/// phase just produced by the Allen-Cahn solve of the same iteration.
struct NsStepInput {
  const Vector& u_n;     // velocity at t^n
  const Vector& rho_n;   // P2 nodal density at t^n
  const Vector& u_k;     // advecting velocity iterate
  const Vector& phi_k1;  // phi_{k+1}
  const Vector& phi_n;   // phase at t^n
  MixtureParams params;
  std::function<Vec2(double phi)> body_force;  // G; empty means G = 0
  std::function<Vec2(Point2)> forcing;         // extra source (manufactured solutions)
  BoundaryValue dirichlet;                     // velocity trace; empty means no-slip
};

/// Counts of pointwise fix-ups applied during assembly.
struct NsAssemblyInfo {
  std::size_t clamped_density_points = 0;
};

/// Block system [[A, B^T], [B, -eps M_p]] in the unknown order (u_x, u_y, p),
/// with velocity Dirichlet rows already replaced. A collects
///   rho/dt mass + rho (u_k . grad) u + 1/2 div(rho u_k) u + mu D(u):D(v)
///   + sigma/gamma (u . grad phi)(grad phi . v);
/// B is -(q, div u). Throws AssemblyError if mu <= 0 at a quadrature point.
SparseSystem assemble_ns(const Discretization& disc, const NsStepInput& input, NsAssemblyInfo* info = nullptr);

struct NsSolveResult {
  Vector u;
  Vector p;                       // shifted to zero mean
  double divergence_norm = 0.0;   // ||B u||_2
  double penalty_norm = 0.0;      // eps ||M_p p||_2 before the shift
  bool divergence_consistent = true;
  std::size_t clamped_density_points = 0;
};

NsSolveResult solve_ns_step(const Discretization& disc, const NsStepInput& input, SolverWorkspace& workspace);

/// Integral weights of the P1 shape functions, so mean(p) = w . p / |Omega|.
Vector pressure_integral_weights(const Discretization& disc);

}  // namespace nsac
