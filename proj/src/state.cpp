#include "nsac/state.hpp"

#include <stdexcept>

namespace nsac {

bool State::matches(const Discretization& disc) const {
  return static_cast<std::size_t>(u.size()) == disc.velocity.dof_count &&
         static_cast<std::size_t>(p.size()) == disc.pressure.dof_count &&
         static_cast<std::size_t>(phi.size()) == disc.phase.dof_count &&
         static_cast<std::size_t>(rho_prev.size()) == disc.phase.dof_count;
}

Vector density_field(const Vector& phi, const MixtureParams& params) {
  Vector rho(phi.size());
  for (Eigen::Index i = 0; i < phi.size(); ++i) rho[i] = mixture_density(params, phi[i]);
  return rho;
}

State make_state(const Discretization& disc, const Vector& phi, const MixtureParams& params, double t) {
  if (static_cast<std::size_t>(phi.size()) != disc.phase.dof_count)
    throw std::invalid_argument("make_state: phase vector has the wrong size");
  State s;
  s.u = Vector::Zero(static_cast<Eigen::Index>(disc.velocity.dof_count));
  s.p = Vector::Zero(static_cast<Eigen::Index>(disc.pressure.dof_count));
  s.phi = phi;
  s.rho_prev = density_field(phi, params);
  s.t = t;
  return s;
}

}  // namespace nsac
