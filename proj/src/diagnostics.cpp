#include "nsac/diagnostics.hpp"

#include <cmath>

#include "nsac/norms.hpp"

namespace nsac {

BoundMonitor make_monitor(std::string name, double constant, double observed, double slack) {
  BoundMonitor m;
  m.name = std::move(name);
  m.constant_value = constant;
  m.observed_value = observed;
  m.slack = slack;
  m.passed = observed <= slack * constant * (1.0 + kMonitorRounding);
  return m;
}

BoundConstants bound_constants(const MixtureParams& p, double domain_area, double u_n_norm) {
  BoundConstants c;
  const double root_area = std::sqrt(domain_area);
  c.phi_l2 = root_area;
  c.grad_phi = root_area / std::sqrt(p.gamma * p.dt) * std::sqrt(1.0 + p.reaction_scale() * (p.beta + 2.0));
  const double rho_i = p.rho_min();
  c.u = p.dt * root_area / rho_i + p.rho_max() / rho_i * u_n_norm + p.sigma * c.grad_phi / (rho_i * p.gamma);
  c.strain = std::sqrt(rho_i / p.mu_min()) * c.u / std::sqrt(p.dt);
  c.u_grad_phi = std::sqrt(p.gamma * rho_i / p.sigma) * c.u / std::sqrt(p.dt);
  return c;
}

std::array<BoundMonitor, 2> check_phase_bounds(const Discretization& disc, const Vector& phi,
                                               const MixtureParams& params, double slack) {
  const BoundConstants c = bound_constants(params, disc.mesh.domain.area(), 0.0);
  return {make_monitor("phi_l2", c.phi_l2, l2_norm_scalar(disc, phi), slack),
          make_monitor("grad_phi_l2", c.grad_phi, h1_seminorm_scalar(disc, phi), slack)};
}

std::array<BoundMonitor, 3> check_velocity_bounds(const Discretization& disc, const Vector& u, const Vector& phi,
                                                  const Vector& u_n, const MixtureParams& params, double slack) {
  const BoundConstants c = bound_constants(params, disc.mesh.domain.area(), l2_norm_vector(disc, u_n));
  return {make_monitor("u_l2", c.u, l2_norm_vector(disc, u), slack),
          make_monitor("strain_l2", c.strain, strain_norm(disc, u), slack),
          make_monitor("u_grad_phi_l2", c.u_grad_phi, advection_norm(disc, u, phi), slack)};
}

BoundMonitor check_max_principle(double max_abs_phi, double tol) {
  BoundMonitor m;
  m.name = "max_abs_phi";
  m.constant_value = 1.0;
  m.observed_value = max_abs_phi;
  m.slack = 1.0 + tol;
  m.passed = max_abs_phi <= 1.0 + tol;
  return m;
}

ContractionEstimate estimate_contraction(std::span<const double> d) {
  ContractionEstimate est;
  if (d.size() < 3) {
    est.note = "fewer than three iterate differences";
    return est;
  }
  // Fitted prefix: entries at or above the floor, up to the first one below it.
  std::size_t fitted = 0;
  while (fitted < d.size() && d[fitted] >= kContractionFloor) ++fitted;
  for (std::size_t k = 1; k < d.size() && d[k - 1] >= kContractionFloor; ++k) est.ratios.push_back(d[k] / d[k - 1]);
  if (fitted < 2) {
    est.note = "history already converged";
    return est;
  }
  // Least squares of log d_k against k.
  double sk = 0.0, sy = 0.0, skk = 0.0, sky = 0.0;
  for (std::size_t k = 0; k < fitted; ++k) {
    const double x = static_cast<double>(k), y = std::log(d[k]);
    sk += x;
    sy += y;
    skk += x * x;
    sky += x * y;
  }
  const double n = static_cast<double>(fitted);
  const double slope = (n * sky - sk * sy) / (n * skk - sk * sk);
  est.geometric_fit = std::exp(slope);
  est.valid = true;
  est.converging = est.geometric_fit < 1.0 - 1e-9;
  if (!est.converging) est.note = "iterates are not contracting";
  return est;
}

}  // namespace nsac
