#pragma once

#include <algorithm>
#include <string>
#include <string_view>

namespace nsac {

/// Physical and scheme constants of the two-phase model.
struct MixtureParams {
  double rho_a = 3.0;
  double rho_b = 1.0;
  double mu_a = 1.0;
  double mu_b = 1.0;
  double gamma = 1.0;  // mobility
  double eta = 0.1;    // interface thickness
  double sigma = 1.0;  // mixing-energy density
  double beta = 0.0;   // fixed-point stabilization
  double dt = 1.0 / 1300.0;
  double eps_pressure = 1e-8;

  double rho_mean() const { return 0.5 * (rho_a + rho_b); }
  double rho_jump() const { return rho_a - rho_b; }
  double rho_min() const { return std::min(rho_a, rho_b); }
  double rho_max() const { return std::max(rho_a, rho_b); }
  double mu_mean() const { return 0.5 * (mu_a + mu_b); }
  double mu_jump() const { return mu_a - mu_b; }
  double mu_min() const { return std::min(mu_a, mu_b); }
  double mu_max() const { return std::max(mu_a, mu_b); }

  /// gamma * dt / eta^2, the weight of the reaction terms.
  double reaction_scale() const { return gamma * dt / (eta * eta); }

  /// Throws std::invalid_argument naming the first out-of-range field.
  void validate() const;

  bool operator==(const MixtureParams&) const = default;
};

/// rho(phi) = mean + jump/2 * phi. No clamping.
inline double mixture_density(const MixtureParams& p, double phi) { return p.rho_mean() + 0.5 * p.rho_jump() * phi; }

/// mu(phi) = mean + jump/2 * phi. No clamping.
inline double mixture_viscosity(const MixtureParams& p, double phi) { return p.mu_mean() + 0.5 * p.mu_jump() * phi; }

/// Double-well potential F(phi) = (phi^2 - 1)^2 / (4 eta^2).
inline double potential(double phi, double eta) {
  const double w = phi * phi - 1.0;
  return w * w / (4.0 * eta * eta);
}

/// f(phi) = F'(phi) = phi (phi^2 - 1) / eta^2.
inline double potential_derivative(double phi, double eta) { return phi * (phi * phi - 1.0) / (eta * eta); }

/// Treatment of the Allen-Cahn nonlinearity inside the fixed-point loop.
enum class AcMethod {
  newton,    // FIN: first-order expansion of f around phi_k
  picard,    // FIP: phi_{k+1} (phi_k^2 - 1)
  explicit_  // SCE: f evaluated at phi^n, beta ignored
};

std::string_view to_string(AcMethod m);
/// Accepts "fin"/"newton", "fip"/"picard", "sce"/"explicit".
AcMethod parse_ac_method(std::string_view name);

/// Pointwise coefficients of one linearized Allen-Cahn solve:
///   reaction * phi_{k+1} + dt u_k . grad phi_{k+1} - gamma dt lap phi_{k+1} = rhs.
struct AcLinearization {
  double reaction = 1.0;
  double rhs = 0.0;
};

inline AcLinearization ac_linearization(AcMethod method, double phi_k, double phi_n, const MixtureParams& p) {
  const double a = p.reaction_scale();
  switch (method) {
    case AcMethod::newton:
      return {1.0 + a * (p.beta - 1.0 + 3.0 * phi_k * phi_k), phi_n + a * phi_k * (p.beta + 2.0 * phi_k * phi_k)};
    case AcMethod::picard:
      return {1.0 + a * (p.beta + phi_k * phi_k - 1.0), phi_n + a * p.beta * phi_k};
    case AcMethod::explicit_:
      return {1.0, phi_n + a * (1.0 - phi_n * phi_n) * phi_n};
  }
  return {};
}

/// Smallest beta for which the linearized solve keeps |phi| <= 1: 9/8 for
/// Newton, 2 for Picard, 0 for the explicit variant.
double max_principle_beta(AcMethod method);

}  // namespace nsac
