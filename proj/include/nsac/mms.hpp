#pragma once

#include <span>

#include "nsac/dof_map.hpp"
#include "nsac/mesh.hpp"
#include "nsac/params.hpp"
#include "nsac/sparse.hpp"

namespace nsac {

/// Analytic values at one space-time point.
struct MmsValues {
  Vec2 u{0.0, 0.0};
  double p = 0.0;
  double phi = 0.0;
};

/// Values and the derivatives the forcing terms need.
struct MmsJet {
  double phi = 0.0, phi_t = 0.0, phi_x = 0.0, phi_y = 0.0, phi_xx = 0.0, phi_yy = 0.0;
  Vec2 u{}, u_t{}, u_x{}, u_y{}, u_xx{}, u_yy{}, u_xy{};
  double p = 0.0;
  Vec2 grad_p{};
};

/// Manufactured two-phase flow on [-1, 1]^2:
///   phi = t (x + 2)^2 / (2 T) - 1,             T = 10 eta^2 / (13 gamma)
///   u   = (pi sin(2 pi y) sin^2(pi x), -pi sin(2 pi x) sin^2(pi y)) sin t
///   p   = cos(pi x) sin(pi y) sin t
/// u is divergence free and vanishes on the boundary. The forcing terms are
/// the strong residuals of the continuous equations with G = 0.
class ManufacturedSolution {
 public:
  explicit ManufacturedSolution(const MixtureParams& params = {});

  static Rectangle domain() { return {-1.0, 1.0, -1.0, 1.0}; }
  double t_ref() const { return t_ref_; }
  const MixtureParams& params() const { return params_; }

  MmsValues eval(double t, double x, double y) const;
  MmsJet jet(double t, double x, double y) const;

  /// phi_t + u . grad phi - gamma (lap phi - f(phi)).
  double forcing_ac(double t, double x, double y) const;
  /// rho u_t + rho_t u / 2 + rho (u . grad) u + div(rho u) u / 2 - div(mu D(u))
  ///   + grad p + sigma/gamma (phi_t + u . grad phi) grad phi.
  Vec2 forcing_ns(double t, double x, double y) const;
  /// forcing_ns with the inertia term rho u_t + rho_t u / 2 replaced by its
  /// backward difference sqrt(rho(t)) (sqrt(rho(t)) u(t) - sqrt(rho(t - dt)) u(t - dt)) / dt,
  /// so the exact fields also solve the time-discrete momentum equation.
  Vec2 forcing_ns_discrete(double t, double dt, double x, double y) const;
  /// gamma * grad phi . n, the Neumann datum of the phase equation.
  double boundary_flux(double t, Point2 x, Point2 normal) const;

 private:
  MixtureParams params_;
  double t_ref_;
};

MmsValues mms_eval(double t, double x, double y, const MixtureParams& params = {});
double mms_forcing_ac(double t, double x, double y, const MixtureParams& params);
Vec2 mms_forcing_ns(double t, double x, double y, const MixtureParams& params);

/// Errors of one time level against the analytic fields at time t.
struct ErrorNorms {
  double e_u = 0.0;       // ||u_h - u||
  double e_phi = 0.0;     // ||phi_h - phi||
  double e_phi_h1 = 0.0;  // full H1 norm of phi_h - phi
};

ErrorNorms step_errors(const Discretization& disc, const Vector& u, const Vector& phi, double t,
                       const ManufacturedSolution& mms);

struct State;
/// Maxima over the given levels of the step errors, each at its own state.t.
ErrorNorms error_norms(const Discretization& disc, std::span<const State> history, const ManufacturedSolution& mms);

}  // namespace nsac
