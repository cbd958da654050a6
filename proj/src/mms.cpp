#include "nsac/mms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nsac/norms.hpp"
#include "nsac/state.hpp"

namespace nsac {

namespace {
constexpr double pi = std::numbers::pi;
}

ManufacturedSolution::ManufacturedSolution(const MixtureParams& params)
    : params_(params), t_ref_(10.0 * params.eta * params.eta / (13.0 * params.gamma)) {}

MmsValues ManufacturedSolution::eval(double t, double x, double y) const {
  const double s = std::sin(t);
  const double sx = std::sin(pi * x), sy = std::sin(pi * y);
  MmsValues v;
  v.u = {pi * std::sin(2.0 * pi * y) * sx * sx * s, -pi * std::sin(2.0 * pi * x) * sy * sy * s};
  v.p = std::cos(pi * x) * sy * s;
  v.phi = t * (x + 2.0) * (x + 2.0) / (2.0 * t_ref_) - 1.0;
  return v;
}

MmsJet ManufacturedSolution::jet(double t, double x, double y) const {
  const double s = std::sin(t), c = std::cos(t);
  const double sx = std::sin(pi * x), sy = std::sin(pi * y), cx = std::cos(pi * x), cy = std::cos(pi * y);
  const double s2x = std::sin(2.0 * pi * x), s2y = std::sin(2.0 * pi * y);
  const double c2x = std::cos(2.0 * pi * x), c2y = std::cos(2.0 * pi * y);
  const double pi2 = pi * pi, pi3 = pi2 * pi;
  const double w = x + 2.0;

  MmsJet j;
  j.phi = t * w * w / (2.0 * t_ref_) - 1.0;
  j.phi_t = w * w / (2.0 * t_ref_);
  j.phi_x = t * w / t_ref_;
  j.phi_xx = t / t_ref_;

  // Time-independent shapes of u1 and u2 and their derivatives; u = shape * sin t.
  const double a = pi * s2y * sx * sx, b = -pi * s2x * sy * sy;
  const double a_x = pi2 * s2y * s2x, a_y = 2.0 * pi2 * c2y * sx * sx;
  const double b_x = -2.0 * pi2 * c2x * sy * sy, b_y = -pi2 * s2x * s2y;
  const double a_xx = 2.0 * pi3 * s2y * c2x, a_yy = -4.0 * pi3 * s2y * sx * sx, a_xy = 2.0 * pi3 * c2y * s2x;
  const double b_xx = 4.0 * pi3 * s2x * sy * sy, b_yy = -2.0 * pi3 * s2x * c2y, b_xy = -2.0 * pi3 * c2x * s2y;
  j.u = {a * s, b * s};
  j.u_t = {a * c, b * c};
  j.u_x = {a_x * s, b_x * s};
  j.u_y = {a_y * s, b_y * s};
  j.u_xx = {a_xx * s, b_xx * s};
  j.u_yy = {a_yy * s, b_yy * s};
  j.u_xy = {a_xy * s, b_xy * s};

  j.p = cx * sy * s;
  j.grad_p = {-pi * sx * sy * s, pi * cx * cy * s};
  return j;
}

double ManufacturedSolution::forcing_ac(double t, double x, double y) const {
  const MmsJet j = jet(t, x, y);
  const double advect = j.u[0] * j.phi_x + j.u[1] * j.phi_y;
  const double lap = j.phi_xx + j.phi_yy;
  return j.phi_t + advect - params_.gamma * (lap - potential_derivative(j.phi, params_.eta));
}

Vec2 ManufacturedSolution::forcing_ns(double t, double x, double y) const {
  const MmsJet j = jet(t, x, y);
  const MixtureParams& prm = params_;
  const double rho = mixture_density(prm, j.phi);
  const double mu = mixture_viscosity(prm, j.phi);
  const double drho = 0.5 * prm.rho_jump(), dmu = 0.5 * prm.mu_jump();
  const double rho_t = drho * j.phi_t;
  const Vec2 grad_rho{drho * j.phi_x, drho * j.phi_y};
  const Vec2 grad_mu{dmu * j.phi_x, dmu * j.phi_y};
  const double div_u = j.u_x[0] + j.u_y[1];
  const double div_rho_u = grad_rho[0] * j.u[0] + grad_rho[1] * j.u[1] + rho * div_u;
  const double phi_dot = j.phi_t + j.u[0] * j.phi_x + j.u[1] * j.phi_y;
  const double capillary = prm.sigma / prm.gamma * phi_dot;

  // D(u) entries and d(div u)/dx_a.
  const double d_xx = j.u_x[0], d_yy = j.u_y[1], d_xy = 0.5 * (j.u_y[0] + j.u_x[1]);
  const Vec2 grad_div{j.u_xx[0] + j.u_xy[1], j.u_xy[0] + j.u_yy[1]};
  const Vec2 lap_u{j.u_xx[0] + j.u_yy[0], j.u_xx[1] + j.u_yy[1]};
  const Vec2 viscous{grad_mu[0] * d_xx + grad_mu[1] * d_xy + 0.5 * mu * (lap_u[0] + grad_div[0]),
                     grad_mu[0] * d_xy + grad_mu[1] * d_yy + 0.5 * mu * (lap_u[1] + grad_div[1])};
  const Vec2 grad_phi{j.phi_x, j.phi_y};

  Vec2 f{};
  for (int a = 0; a < 2; ++a) {
    const double convect = j.u[0] * j.u_x[a] + j.u[1] * j.u_y[a];
    f[a] = rho * j.u_t[a] + 0.5 * rho_t * j.u[a] + rho * convect + 0.5 * div_rho_u * j.u[a] - viscous[a] +
           j.grad_p[a] + capillary * grad_phi[a];
  }
  return f;
}

Vec2 ManufacturedSolution::forcing_ns_discrete(double t, double dt, double x, double y) const {
  const MmsJet j = jet(t, x, y);
  const MmsValues old = eval(t - dt, x, y);
  const double rho = mixture_density(params_, j.phi), rho_old = mixture_density(params_, old.phi);
  const double rho_t = 0.5 * params_.rho_jump() * j.phi_t;
  const double root = std::sqrt(rho), root_old = std::sqrt(rho_old);
  Vec2 f = forcing_ns(t, x, y);
  for (int a = 0; a < 2; ++a)
    f[a] += root * (root * j.u[a] - root_old * old.u[a]) / dt - (rho * j.u_t[a] + 0.5 * rho_t * j.u[a]);
  return f;
}

double ManufacturedSolution::boundary_flux(double t, Point2 x, Point2 normal) const {
  const MmsJet j = jet(t, x.x, x.y);
  return params_.gamma * (j.phi_x * normal.x + j.phi_y * normal.y);
}

MmsValues mms_eval(double t, double x, double y, const MixtureParams& params) {
  return ManufacturedSolution(params).eval(t, x, y);
}

double mms_forcing_ac(double t, double x, double y, const MixtureParams& params) {
  return ManufacturedSolution(params).forcing_ac(t, x, y);
}

Vec2 mms_forcing_ns(double t, double x, double y, const MixtureParams& params) {
  return ManufacturedSolution(params).forcing_ns(t, x, y);
}

ErrorNorms step_errors(const Discretization& disc, const Vector& u, const Vector& phi, double t,
                       const ManufacturedSolution& mms) {
  ErrorNorms e;
  e.e_u = l2_error_vector(disc, u, [&](Point2 x) { return mms.eval(t, x.x, x.y).u; });
  e.e_phi = l2_error_scalar(disc, phi, [&](Point2 x) { return mms.eval(t, x.x, x.y).phi; });
  const double semi = h1_semierror_scalar(disc, phi, [&](Point2 x) {
    const MmsJet j = mms.jet(t, x.x, x.y);
    return Vec2{j.phi_x, j.phi_y};
  });
  e.e_phi_h1 = std::hypot(e.e_phi, semi);
  return e;
}

ErrorNorms error_norms(const Discretization& disc, std::span<const State> history, const ManufacturedSolution& mms) {
  ErrorNorms worst;
  for (const State& s : history) {
    const ErrorNorms e = step_errors(disc, s.u, s.phi, s.t, mms);
    worst.e_u = std::max(worst.e_u, e.e_u);
    worst.e_phi = std::max(worst.e_phi, e.e_phi);
    worst.e_phi_h1 = std::max(worst.e_phi_h1, e.e_phi_h1);
  }
  return worst;
}

}  // namespace nsac
